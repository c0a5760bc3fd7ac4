"""Shared fixtures: seeded family factories and the acceptance report hook."""

from __future__ import annotations

from hypothesis import settings

from cinegeom.curves import Interval, circle_curve, circle_family
from cinegeom.rng import SplitMix64

settings.register_profile("suite", deadline=None, max_examples=50,
                          derandomize=True)
settings.load_profile("suite")

J_STD = Interval(-0.5, 0.5)


def random_circle(rng: SplitMix64, label: str = "c", domain: Interval = J_STD):
    a = (rng.uniform() - 0.5) * 0.1
    b = (rng.uniform() - 0.5) * 0.1
    r = 1.0 + rng.uniform()
    return circle_curve((a, b), r, domain, label=label)


def random_circle_family(n: int, seed: int, domain: Interval = J_STD):
    rng = SplitMix64(seed)
    centers = [((rng.uniform() - 0.5) * 0.1, (rng.uniform() - 0.5) * 0.1)
               for _ in range(n)]
    radii = [1.0 + rng.uniform() for _ in range(n)]
    return circle_family(centers, radii, domain, analyze=False)


def near_tangent_pair(rng: SplitMix64, domain: Interval = J_STD,
                      depth_lo: float = -7.0, depth_hi: float = -2.0):
    """Internally near-tangent circle pair with seeded tangency depth."""
    r1 = 1.2 + 0.3 * rng.uniform()
    r2 = r1 + 0.05 + 0.15 * rng.uniform()
    eps = 10.0 ** (depth_lo + (depth_hi - depth_lo) * rng.uniform())
    sgn = 1.0 if rng.uniform() < 0.5 else -1.0
    f = circle_curve((0.0, 0.0), r1, domain, label="f")
    g = circle_curve((0.0, r1 - r2 - sgn * eps), r2, domain, label="g")
    return f, g


# --- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
