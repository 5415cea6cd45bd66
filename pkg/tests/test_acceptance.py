"""Acceptance suite.

Each test checks one criterion at full sample size and prints a single
``PASS`` or ``FAIL`` line with the worst observed value. Run directly with
``python3 tests/test_acceptance.py`` or through pytest (the lines are
printed even when output capture is on).
"""
import json
import math
import sys
import time
from typing import NamedTuple

import numpy as np
import pytest

from noisyops import jsonio
from noisyops.canonical import mixed_unitary_decomposition
from noisyops.channels import (
    ChoiMatrix,
    KrausDecomposition,
    MixedUnitaryDecomposition,
    choi_distance,
    choi_from_kraus,
    kraus_from_choi,
    kraus_rank,
    to_choi,
)
from noisyops.cli import main as cli_main
from noisyops.errors import KTooSmall, NotMajorized
from noisyops.kernels import BACKEND
from noisyops.linalg import PAULIS, hermitian_eig, svd
from noisyops.rebalance import (
    RebalanceWeights,
    diagonalize_relative,
    lemma1_rebalance,
    majorizes,
    phase_residual,
    reweight,
)
from noisyops.sampling import (
    haar_unitary,
    random_mixed_unitary,
    random_rebalance_instance,
    random_unital_choi,
    trial_rng,
)
from noisyops.schmidt import GAP_FACTOR, check_rank_lemma, rank_census

SEED = 20171019
TAU_RANK = 1e-8


class Outcome(NamedTuple):
    ok: bool
    detail: str


def _report(number, title, outcome, seconds, out=None):
    status = "PASS" if outcome.ok else "FAIL"
    line = f"{status}  criterion {number}: {title} [{outcome.detail}; {seconds:.1f}s, {BACKEND} kernels]"
    print(line, file=out or sys.stdout, flush=True)


def _choi_of_two(w1, u1, w2, u2):
    # independent oracle: (1/2) sum_i w_i vec(U_i) vec(U_i)^+ with column stacking
    a, b = u1.reshape(-1, order="F"), u2.reshape(-1, order="F")
    return (w1 * np.outer(a, a.conj()) + w2 * np.outer(b, b.conj())) / 2


def _pipeline_via_cli(path, k, tmp_dir):
    out = tmp_dir / f"dil_{k}.json"
    code = cli_main(["dilate", "--input", str(path), "--env-dim", str(k), "--output", str(out)])
    return code, out


def criterion_1(tmp_dir):
    """Random unital qubit channels are 4-noisy operations, via the dilate command."""
    import contextlib
    import io

    worst = 0.0
    failures = 0
    for i in range(1000):
        choi = random_unital_choi(trial_rng(SEED, i))
        path = tmp_dir / "channel.json"
        path.write_text(jsonio.dumps(jsonio.channel_to_json(choi)))
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code, out = _pipeline_via_cli(path, 4, tmp_dir)
        if code != 0:
            failures += 1
            continue
        dil = jsonio.dilation_from_json(jsonio.load_file(out))
        distance = float(buf.getvalue().split()[1])
        if dil.matrix.shape != (8, 8) or dil.env_dim != 4:
            failures += 1
        worst = max(worst, distance)
    ok = failures == 0 and worst <= 1e-9
    return Outcome(ok, f"1000 channels, {failures} failures, max Choi distance {worst:.2e} (bound 1e-9)")


def criterion_2():
    """Two-term rebalancing identity and the endpoint signs of the phase equation."""
    rng = trial_rng(SEED, 2)
    worst_dist = 0.0
    worst_sign = 0.0
    trials = 100_000
    for _ in range(trials):
        a, b, c, d = random_rebalance_instance(rng)
        s = a + d
        w = RebalanceWeights(a / s, b / s, c / s, d / s)
        u1, u2 = haar_unitary(2, rng), haar_unitary(2, rng)
        theta = diagonalize_relative(u1, u2).theta
        worst_sign = max(worst_sign, phase_residual(w, theta, 0.0), -phase_residual(w, theta, theta))
        v1, v2 = lemma1_rebalance(w, u1, u2)
        dist = np.linalg.norm(_choi_of_two(w.a, u1, w.d, u2) - _choi_of_two(w.b, v1, w.c, v2))
        worst_dist = max(worst_dist, dist)
    ok = worst_dist <= 1e-10 and worst_sign <= 1e-12
    return Outcome(
        ok,
        f"{trials} instances, max Choi distance {worst_dist:.2e} (bound 1e-10), "
        f"max endpoint sign violation {worst_sign:.2e} (bound 1e-12)",
    )


def criterion_3():
    """Reweighting along majorization, and rejection of non-majorized targets."""
    rng = trial_rng(SEED, 3)
    worst = 0.0
    worst_steps_excess = -np.inf
    for _ in range(10_000):
        k = int(rng.integers(2, 9))
        m = random_mixed_unitary(k, rng)
        r = int(rng.integers(1, 5))
        mix = rng.dirichlet(np.ones(r))
        q = sum(c * m.weights[rng.permutation(k)] for c in mix)
        q = q / q.sum()
        out, steps = reweight(m, q)
        worst = max(worst, choi_distance(out, m))
        worst_steps_excess = max(worst_steps_excess, len(steps) - (k - 1))
    rejected = 0
    attempts = 0
    while attempts < 1000:
        k = int(rng.integers(2, 9))
        p, q = rng.dirichlet(np.ones(k)), rng.dirichlet(np.ones(k))
        if majorizes(p, q):
            continue
        attempts += 1
        m = MixedUnitaryDecomposition(p, tuple(haar_unitary(2, rng) for _ in range(k)))
        try:
            reweight(m, q)
        except NotMajorized:
            rejected += 1
    ok = worst <= 1e-9 and worst_steps_excess <= 0 and rejected == 1000
    return Outcome(
        ok,
        f"10000 majorized pairs, max Choi distance {worst:.2e} (bound 1e-9), "
        f"max steps minus (k-1) = {int(worst_steps_excess)}; {rejected}/1000 non-majorized pairs rejected",
    )


def criterion_4():
    """No 2-noisy qubit operation has Kraus rank 3."""
    hist = rank_census(2, 2, 10_000, SEED)
    ok = hist.counts.get(3, 0) == 0 and hist.min_gap >= GAP_FACTOR * TAU_RANK
    counts = ", ".join(f"{r}: {c}" for r, c in sorted(hist.counts.items()))
    return Outcome(ok, f"10000 Haar unitaries, counts {{{counts}}}, min gap {hist.min_gap:.2e} (bound {GAP_FACTOR * TAU_RANK:.0e})")


def criterion_5():
    """Kraus rank of the noisy operation equals the operator Schmidt rank of the unitary."""
    mismatches = 0
    trials = 0
    for n in (2, 3, 4):
        for i in range(10_000):
            u = haar_unitary(2 * n, trial_rng(SEED + n, i))
            trials += 1
            if not check_rank_lemma(u, 2, n).equal:
                mismatches += 1
    return Outcome(mismatches == 0, f"{trials} unitaries over (2,2), (2,3), (2,4), {mismatches} mismatches")


def criterion_6(tmp_dir):
    """The uniform Pauli channel has Kraus rank 3, is 3-noisy, and k=2 is rejected."""
    import contextlib
    import io

    channel = MixedUnitaryDecomposition(np.ones(3) / 3, PAULIS[1:])
    rank = kraus_rank(channel)
    path = tmp_dir / "pauli.json"
    path.write_text(jsonio.dumps(jsonio.channel_to_json(to_choi(channel))))
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code3, out3 = _pipeline_via_cli(path, 3, tmp_dir)
        code2, _ = _pipeline_via_cli(path, 2, tmp_dir)
    distance = float(buf.getvalue().split()[1]) if code3 == 0 else math.inf
    shape = jsonio.dilation_from_json(jsonio.load_file(out3)).matrix.shape if code3 == 0 else None
    ok = rank == 3 and code3 == 0 and distance <= 1e-9 and shape == (6, 6) and code2 == 6
    return Outcome(
        ok,
        f"Kraus rank {rank}, k=3 exit {code3} distance {distance:.2e} dilation {shape}, "
        f"k=2 exit {code2} ({KTooSmall.__name__})",
    )


def criterion_7():
    """Kernel reconstruction, Choi round trips and canonical-form recovery."""
    rng = trial_rng(SEED, 7)
    worst_eig = worst_svd = 0.0
    for _ in range(10_000):
        n = int(rng.integers(1, 17))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (a + a.conj().T) / 2
        e = hermitian_eig(h)
        worst_eig = max(worst_eig, np.linalg.norm(h - (e.vectors * e.values) @ e.vectors.conj().T))
        rows = int(rng.integers(1, 17))
        m = rng.standard_normal((rows, n)) + 1j * rng.standard_normal((rows, n))
        s = svd(m)
        r = min(rows, n)
        recon = (s.left[:, :r] * s.singulars[:r]) @ s.right[:, :r].conj().T
        worst_svd = max(worst_svd, np.linalg.norm(m - recon))
    worst_round = 0.0
    for _ in range(10_000):
        r = int(rng.integers(1, 5))
        v = haar_unitary(2 * r, rng)[:, :2]
        k = KrausDecomposition(2, tuple(v[i::r, :] for i in range(r)))
        c = choi_from_kraus(k)
        worst_round = max(worst_round, choi_distance(kraus_from_choi(c), c))
    worst_canon = 0.0
    for _ in range(10_000):
        c = random_unital_choi(rng, int(rng.integers(1, 5)))
        # re-ingest through the interchange format with only the Choi matrix
        obj = json.loads(jsonio.dumps(jsonio.channel_to_json(c)))
        ingested = jsonio.channel_from_json(obj)
        assert isinstance(ingested, ChoiMatrix)
        worst_canon = max(worst_canon, choi_distance(mixed_unitary_decomposition(ingested), c))
    ok = worst_eig <= 1e-11 and worst_svd <= 1e-11 and worst_round <= 1e-10 and worst_canon <= 1e-9
    return Outcome(
        ok,
        f"eig {worst_eig:.2e} and SVD {worst_svd:.2e} over 10000 inputs (bound 1e-11), "
        f"Choi round trip {worst_round:.2e} (bound 1e-10), canonical recovery {worst_canon:.2e} (bound 1e-9)",
    )


CRITERIA = {
    1: ("4-noisy dilation of random unital qubit channels", criterion_1, True),
    2: ("two-term rebalancing identity", criterion_2, False),
    3: ("reweighting by T-transforms", criterion_3, False),
    4: ("no Kraus rank 3 among 2-noisy qubit operations", criterion_4, False),
    5: ("Kraus rank equals operator Schmidt rank", criterion_5, False),
    6: ("uniform Pauli channel", criterion_6, True),
    7: ("kernel and representation accuracy", criterion_7, False),
}


def _run(number, tmp_dir, out=None):
    title, func, needs_dir = CRITERIA[number]
    start = time.perf_counter()
    outcome = func(tmp_dir) if needs_dir else func()
    _report(number, title, outcome, time.perf_counter() - start, out)
    return outcome


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, tmp_path, capsys):
    with capsys.disabled():
        sys.stdout.write("\n")
        outcome = _run(number, tmp_path)
    assert outcome.ok, outcome.detail


if __name__ == "__main__":
    import pathlib
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        results = [_run(n, pathlib.Path(tmp)) for n in sorted(CRITERIA)]
    sys.exit(0 if all(r.ok for r in results) else 1)
