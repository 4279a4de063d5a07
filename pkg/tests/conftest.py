import itertools

import pytest

from oaqec import (
    BUILTIN_NAMES,
    Bipartition,
    CodeContext,
    analyze,
    builtin,
    compile_isometry,
    erasure_channel,
    is_correctable,
    is_private_for_complement,
    logical_algebra,
)


@pytest.fixture(scope="session")
def isometries():
    return {name: compile_isometry(builtin(name)) for name in BUILTIN_NAMES}


@pytest.fixture(scope="session")
def six_qubit_reports(isometries):
    """analyze() for every size-3 region of the six-qubit code containing qubit 0."""
    iso = isometries["six-qubit"]
    out = {}
    for region in itertools.combinations(range(6), 3):
        if 0 not in region:
            continue
        ctx = CodeContext(iso, Bipartition(6, region))
        out[region] = analyze(ctx)
    return out


@pytest.fixture(scope="session")
def duality_violations(isometries):
    """Cases where is_correctable and is_private_for_complement disagree.

    Exhaustive over built-ins, balanced bipartitions, both sides' logical
    algebras, and both erasure directions; expected to be empty.
    """
    bad = []
    for name, iso in isometries.items():
        n = iso.n
        for region in itertools.combinations(range(n), n // 2):
            b = Bipartition(n, region)
            ctx = CodeContext(iso, b)
            for side in ("A", "Abar"):
                m = logical_algebra(ctx, side)
                for erase in ("A", "Abar"):
                    ch = erasure_channel(b, erase)
                    if is_correctable(m, ctx, ch) != is_private_for_complement(m, ctx, ch):
                        bad.append((name, region, side, erase))
    return bad
