import pytest

from realchip import errors
from realchip.budget import EnumerationBudget


def test_track_counts_items():
    with EnumerationBudget(5, label="test") as tracker:
        assert list(tracker.track(range(3))) == [0, 1, 2]
        assert tracker.count == 3
        assert tracker.remaining == 2


def test_register_over_cap():
    tracker = EnumerationBudget(2)
    tracker.register(2)
    with pytest.raises(errors.EnumerationBudgetExceededError):
        tracker.register()
    with pytest.raises(ValueError):
        tracker.register(-1)


def test_precheck():
    tracker = EnumerationBudget(10, label="sweep")
    tracker.register(4)
    tracker.precheck(6)
    with pytest.raises(errors.EnumerationBudgetExceededError) as info:
        tracker.precheck(7)
    assert "sweep" in str(info.value)


def test_track_stops_at_cap():
    with pytest.raises(errors.EnumerationBudgetExceededError):
        with EnumerationBudget(3) as tracker:
            for _ in tracker.track(range(10)):
                pass
