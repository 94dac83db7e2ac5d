import os
import typing
from dataclasses import dataclass

from realchip import errors

# environment variable overriding the enumeration cap
BUDGET_ENV_VAR = "REALCHIP_BUDGET"

# maximal number of candidate divisors examined by a single sweep
DEFAULT_ENUMERATION_CAP = 10**7
# maximal number of unit edges in a subdivided metric model
DEFAULT_MODEL_CAP = 10**5


@dataclass(frozen=True)
class Budget:
    """Caps on exhaustive enumeration."""

    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    model_cap: int = DEFAULT_MODEL_CAP

    def __post_init__(self):
        if self.enumeration_cap < 1 or self.model_cap < 1:
            raise errors.InvalidBudgetError(f"Budget caps must be positive, got {self}")

    @classmethod
    def from_env(cls, environ: typing.Mapping[str, str] | None = None) -> "Budget":
        """Default budget, with the enumeration cap taken from REALCHIP_BUDGET when set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(BUDGET_ENV_VAR)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            cap = int(raw.strip())
        except ValueError:
            raise errors.InvalidBudgetError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}") from None
        return cls(enumeration_cap=cap)


def resolve(budget: Budget | None) -> Budget:
    return Budget.from_env() if budget is None else budget
