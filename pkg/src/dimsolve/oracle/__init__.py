from ._base import OracleUsageError, Verdict, brute_force, verify

__all__ = [
    "OracleUsageError",
    "Verdict",
    "brute_force",
    "verify",
]
