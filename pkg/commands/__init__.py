from commands import compare, export, factor, laws, leinster, sequences

__all__ = ["laws", "leinster", "factor", "compare", "sequences", "export"]
