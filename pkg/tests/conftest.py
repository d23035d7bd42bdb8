import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dualkit.context import IncidenceStructure
from dualkit.poset import build_poset
from dualkit.sets import SetFamily

settings.register_profile(
    "dualkit", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("dualkit")


@st.composite
def posets(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    order = draw(st.permutations(range(n)))
    candidates = [(order[a], order[b]) for a in range(n) for b in range(a + 1, n)]
    pairs = draw(st.lists(st.sampled_from(candidates), unique=True) if candidates else st.just([]))
    return build_poset(n, pairs)


@st.composite
def structures(draw, max_m=6, max_n=6):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return IncidenceStructure(m, n, tuple(rows))


@st.composite
def families(draw, max_ground=5, max_size=5):
    ground = draw(st.integers(1, max_ground))
    masks = draw(st.lists(st.integers(0, (1 << ground) - 1), max_size=max_size))
    return SetFamily.from_masks(ground, masks)


def seeded(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
