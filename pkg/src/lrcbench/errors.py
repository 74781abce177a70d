"""Exception hierarchy shared by all modules (and mapped to CLI exit codes)."""


class LRCError(Exception):
    """Base class for library errors."""


class ValidationError(LRCError, ValueError):
    """Bad parameters or preconditions."""


class BudgetExceeded(LRCError):
    """An enumeration or search would exceed its configured budget."""


class VerificationError(LRCError):
    """A constructed artifact does not meet its claimed parameters."""


class TableMiss(LRCError, KeyError):
    """An exact-table provider was queried outside its domain."""
