"""
OpCat — export
  export --cat SEL --what {category,leinster} --format {json,dot}
"""
from errors import SelectorError
from export import category_dot, category_export, leinster_export, to_json
from models import EXPORTS, CliConfig
from perfect import perfect
from selector import parse_selector

from commands.common import emit


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("export", parents=parents, help="Export a bounded category as JSON or DOT")
    p.add_argument("--what", choices=EXPORTS, default="category")
    p.set_defaults(run=run)


def run(config: CliConfig) -> int:
    C = parse_selector(config.selector)
    if config.what == "leinster":
        export = leinster_export(perfect(C), config.bound)
    else:
        export = category_export(C, config.bound)
    if config.format == "json":
        emit(to_json(export), config.out)
    elif config.format == "dot":
        emit(category_dot(export), config.out)
    else:
        raise SelectorError("exports are JSON or DOT")
    return 0
