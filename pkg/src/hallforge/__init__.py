"""
Exact modified Ringel-Hall algebras of Z/2-graded complexes and Drinfeld double verification.
"""

__all__ = [
    "cli",
]
