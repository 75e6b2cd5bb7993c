import random

import pytest

from minuscule.poset import Poset, from_covers

_ACCEPTANCE = pytest.StashKey[dict]()
N_CRITERIA = 13


def random_poset(rng: random.Random, n: int, density: float = 0.3) -> Poset:
    """Random poset: a random DAG over a shuffled order, transitively reduced."""
    order = list(range(n))
    rng.shuffle(order)
    covers = [
        (order[i], order[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return from_covers(n, covers)


def random_linear_extension(rng: random.Random, P: Poset) -> list[int]:
    """Bottom-first linear extension, choosing uniformly among available elements."""
    done, out = 0, []
    while len(out) < P.n:
        avail = [x for x in range(P.n)
                 if not done >> x & 1 and P.lower[x] & done == P.lower[x]]
        x = rng.choice(avail)
        out.append(x)
        done |= 1 << x
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def criterion(request):
    """Record an acceptance verdict; printed in the terminal summary."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(number: int, ok: bool, detail: str = "") -> None:
        results[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE, None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, N_CRITERIA + 1):
        if number in results:
            ok, detail = results[number]
            terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {number:2d}: FAIL  (no result recorded)")
