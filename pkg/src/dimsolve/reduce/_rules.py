import enum

from ..constants import DimError


class RuleInconsistencyError(DimError, RuntimeError):
    """Raised when a rule site breaks the preconditions its rewrite relies on."""


class Rule(enum.StrEnum):
    """
    Reduction rules, in the order the reducer tries them.

    Rules 1 to 4 are the propagation rules, 5 to 7 the reducibility rules and 8 to 13 the
    structural rewrites.
    """

    R1 = "rule1"  # halt on a Basic Condition violation
    R2 = "rule2"  # U next to M1 goes to I
    R3 = "rule3"  # U next to I goes to M
    R4 = "rule4"  # unique U-neighbor of an M0-vertex goes to M
    R5 = "rule5"  # infeasible vertex
    R6 = "rule6"  # i-reducible vertex goes to I
    R7 = "rule7"  # m-reducible vertex goes to M
    R8 = "rule8"
    R9 = "rule9"
    R10 = "rule10"
    R11 = "rule11"
    R12 = "rule12"
    R13 = "rule13"
