from commands import char, domination, hilbert, linkage, poset, verify

__all__ = ["char", "domination", "hilbert", "linkage", "poset", "verify"]
