from models import linkage, oracle, resolution

__all__ = ["linkage", "oracle", "resolution"]
