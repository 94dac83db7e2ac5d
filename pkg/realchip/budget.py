from __future__ import annotations

import logging
import typing
from contextlib import AbstractContextManager
from dataclasses import dataclass, field

from realchip import errors

log = logging.getLogger(__name__)

R = typing.TypeVar("R")


@dataclass
class EnumerationBudget(AbstractContextManager):
    """Context manager counting the candidates examined by an exhaustive sweep."""

    cap: int
    label: str = "enumeration"
    # tracked attributes
    count: int = field(default=0, init=False)

    def __enter__(self) -> typing.Self:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_value: BaseException | None,
        traceback: typing.Type | None,
    ) -> bool | None:
        log.debug("%s examined %d candidates (cap %d)", self.label, self.count, self.cap)
        return None

    @property
    def remaining(self) -> int:
        return max(self.cap - self.count, 0)

    def precheck(self, total: int):
        """Reject a sweep whose exact size is already known to exceed the remaining budget."""
        if total > self.remaining:
            raise errors.EnumerationBudgetExceededError(
                f"{self.label}: sweep of {total} candidates exceeds remaining budget {self.remaining} (cap {self.cap})"
            )

    def register(self, n: int = 1):
        """Register examined candidates with the budget."""
        if n < 0:
            raise ValueError(f"Cannot register a negative number of candidates: {n}")
        self.count += n
        if self.count > self.cap:
            raise errors.EnumerationBudgetExceededError(f"{self.label}: exceeded cap of {self.cap} candidates")

    def track(self, items: typing.Iterable[R]) -> typing.Iterator[R]:
        """Yield from items while registering each one."""
        for item in items:
            self.register()
            yield item

