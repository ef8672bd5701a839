"""Three-valued answers used throughout the workbench.

Budget-limited procedures answer YES only with concrete evidence, NO only
from an exhaustive (budget-complete) search, and UNKNOWN otherwise.
"""

import enum


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __bool__(self):
        raise TypeError("Verdict is three-valued; compare explicitly")


PROVED = Verdict.YES
REFUTED = Verdict.NO
UNKNOWN = Verdict.UNKNOWN
