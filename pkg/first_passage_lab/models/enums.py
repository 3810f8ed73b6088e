from enum import Enum

class Relation(Enum):
    EQUAL_COR = "equal-cor"
    W_DOMINATES = "w-dominates"
    W_PRIME_DOMINATES = "w'-dominates"

class KernelType(Enum):
    DOUBLING = "doubling"
    TENT = "tent"
    VON_NEUMANN_ULAM = "von-neumann-ulam"
    BAKER = "baker"

class CheckKind(Enum):
    INVARIANT = "invariant"
    PUBLISHED_CLAIM = "published-claim"

class CheckLevel(Enum):
    QUICK = "quick"
    FULL = "full"

class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"
