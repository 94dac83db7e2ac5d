import math
import typing
from fractions import Fraction

from realchip import errors


def compositions(total: int, parts: int) -> typing.Iterator[tuple[int, ...]]:
    """All tuples of nonnegative integers of the given length summing to total, in descending lexicographic order."""
    if total < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    current = [total] + [0] * (parts - 1)
    while True:
        yield tuple(current)
        # the rightmost nonzero entry before the last moves one unit right and takes the tail with it
        i = parts - 2
        while i >= 0 and current[i] == 0:
            i -= 1
        if i < 0:
            return
        tail = current[-1]
        current[i] -= 1
        current[i + 1 :] = [tail + 1] + [0] * (parts - i - 2)


def count_compositions(total: int, parts: int) -> int:
    """Number of compositions of total into the given number of nonnegative parts (stars and bars)."""
    if total < 0:
        return 0
    if parts == 0:
        return 1 if total == 0 else 0
    return math.comb(total + parts - 1, parts - 1)


def parse_rational(value: object) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a "p/q" / decimal string."""
    if isinstance(value, bool):
        raise errors.IrrationalPointError(f"Not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise errors.IrrationalPointError(f"Not a rational number: {value!r}") from None
    # floats are rejected: their value is a binary approximation of the intended number
    raise errors.IrrationalPointError(f"Not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def lcm_of_denominators(values: typing.Iterable[Fraction]) -> int:
    return math.lcm(1, *(v.denominator for v in values))
