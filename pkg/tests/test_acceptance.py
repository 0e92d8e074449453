"""Acceptance gate: one test per criterion, each printing a PASS line with
the measured values (run with ``pytest tests/test_acceptance.py -v -s``).

Criteria 1-5 reproduce well-known reference values on the original Wisconsin
breast-cancer file, which cannot be redistributed here; when the file is
absent those tests FAIL with instructions (they are intentionally not
skipped - see data/README.md). They carry the ``wbc`` marker so the rest of
the gate can be selected with ``-m "not wbc"``. Criteria 6-8 are
self-contained oracle and determinism checks that always run.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from clusterlab import (
    KMeans,
    KMedoids,
    PCA2D,
    build_dataset,
    distance,
    drop_missing_rows,
    hopkins_statistic,
    name_clusters,
    pairwise_distances,
    parse_csv,
    silhouette_report,
    sweep_k,
)
from clusterlab.cli import main as cli_main
from conftest import find_wbc_file
from synthwbc import synthetic_wbc_csv
from test_kmeans import exhaustive_best_wss_k2
from test_kmedoids import exhaustive_best_medoids, separable_blobs
from test_validation import naive_silhouette

MISSING_DATA_MESSAGE = (
    "BLOCKED: this criterion needs the genuine Wisconsin breast-cancer file "
    "(breast-cancer-wisconsin.data, 699 rows, 16 '?' cells). It is not "
    "bundled with this repository and this environment has no way to fetch "
    "it. Download it from the UCI Machine Learning Repository and place it "
    "at data/breast-cancer-wisconsin.data (or set $CLUSTERLAB_WBC), then "
    "re-run. See data/README.md."
)


def _require_wbc():
    path = find_wbc_file()
    if path is None:
        pytest.fail(MISSING_DATA_MESSAGE)
    table = parse_csv(path.read_bytes())
    if table.n_rows != 699 or table.n_cols != 11:
        pytest.fail(
            f"file at {path} has shape {table.n_rows}x{table.n_cols}, "
            "expected the original 699x11 table"
        )
    return table


def _prepare_wbc(table):
    kept, _ = drop_missing_rows(table)
    data, _ = build_dataset(kept, id_column="col0", label_column="col10",
                            normalize=True)
    return data


@pytest.mark.wbc
def test_criterion_1_preprocessing_exactness():
    table = _require_wbc()
    start = time.perf_counter()
    kept, dropped = drop_missing_rows(table)
    data, report = build_dataset(kept, id_column="col0", label_column="col10",
                                 normalize=True)
    elapsed = time.perf_counter() - start

    assert table.n_rows == 699
    assert kept.n_rows == 683
    assert len(dropped) == 16
    assert data.d == 9
    assert float(data.features.min()) >= 0.0
    assert float(data.features.max()) <= 1.0
    assert elapsed < 0.1, f"preprocessing took {elapsed:.3f}s (limit 0.1s)"
    print(f"\n[criterion 1] PASS - 699 -> 683 rows, 16 dropped, 9 features, "
          f"values in [0,1], {elapsed * 1000:.1f} ms")


@pytest.mark.wbc
def test_criterion_2_hopkins_reproduction():
    # uniform-box control first: it needs no data file
    control = np.random.default_rng(123).random((683, 9))
    ctrl = hopkins_statistic(control, m=68, trials=30, seed=9)
    assert 0.45 <= ctrl.h <= 0.55, f"uniform control H = {ctrl.h:.4f}"

    table = _require_wbc()
    data = _prepare_wbc(table)
    start = time.perf_counter()
    result = hopkins_statistic(data.features, m=68, trials=30, seed=7)
    elapsed = time.perf_counter() - start
    assert 0.75 <= result.h <= 0.85, f"H = {result.h:.7f} outside [0.75, 0.85]"
    assert elapsed < 1.0, f"hopkins took {elapsed:.3f}s (limit 1s)"
    print(f"\n[criterion 2] PASS - H = {result.h:.7f} (m=68, 30 trials), "
          f"uniform control {ctrl.h:.4f}, {elapsed * 1000:.0f} ms")


@pytest.mark.wbc
def test_criterion_3_kmeans_cluster_table():
    table = _require_wbc()
    data = _prepare_wbc(table)
    start = time.perf_counter()
    est = KMeans(n_clusters=2, n_init=25, random_state=42).fit(data.features)
    elapsed = time.perf_counter() - start

    sizes = [int(s) for s in est.cluster_sizes_]
    big, small = max(sizes), min(sizes)
    assert abs(big - 402) <= 15, f"larger cluster {big} not within 402 +/- 15"
    assert abs(small - 281) <= 15, f"smaller cluster {small} not within 281 +/- 15"

    from clusterlab.report import round_percent
    total = big + small
    assert round_percent(big, total) == 59
    assert round_percent(small, total) == 41

    naming = name_clusters(est.labels_, data.labels)
    purities = {cn.name: cn.purity for cn in naming.clusters.values()}
    assert elapsed < 1.0, f"k-means took {elapsed:.3f}s (limit 1s)"
    # NOTE: with 239 malignant points among 683, any cluster of 266+ members
    # can reach at most 239/266 = 0.898 malignant purity, so this bound and
    # the size band above cannot hold simultaneously; kept as stated.
    for name, purity in purities.items():
        assert purity >= 0.9, f"{name} cluster purity {purity:.4f} < 0.9"
    print(f"\n[criterion 3] PASS - sizes {big}/{small} (59%/41%), "
          f"purities {purities}, {elapsed * 1000:.0f} ms")


@pytest.mark.wbc
def test_criterion_4_pam_silhouette():
    table = _require_wbc()
    data = _prepare_wbc(table)
    start = time.perf_counter()
    dist = pairwise_distances(data.features)
    est = KMedoids(n_clusters=2).fit(dist)
    rep = silhouette_report(dist, est.labels_)
    elapsed = time.perf_counter() - start
    assert 0.55 <= rep.overall <= 0.59, (
        f"PAM average silhouette {rep.overall:.4f} outside [0.55, 0.59]"
    )
    assert elapsed < 5.0, f"PAM+silhouette took {elapsed:.3f}s (limit 5s)"
    print(f"\n[criterion 4] PASS - PAM k=2 silhouette {rep.overall:.4f}, "
          f"{elapsed:.2f} s incl. distance matrix")


@pytest.mark.wbc
def test_criterion_5_sweep_reproduction():
    table = _require_wbc()
    data = _prepare_wbc(table)
    start = time.perf_counter()
    sweep = sweep_k(data.features, (2, 10), algorithm="kmeans", seed=11,
                    n_init=25)
    elapsed = time.perf_counter() - start
    peak = max(sweep.avg_silhouette)
    assert sweep.best_k == 2, f"best k = {sweep.best_k}, expected 2"
    assert 0.56 <= peak <= 0.60, f"peak silhouette {peak:.4f} outside [0.56, 0.60]"
    assert elapsed < 10.0, f"sweep took {elapsed:.3f}s (limit 10s)"
    print(f"\n[criterion 5] PASS - best k = 2, peak silhouette {peak:.4f}, "
          f"{elapsed:.2f} s")


def test_criterion_6_oracle_equivalence():
    # (a) k-means with 50 restarts attains the exhaustive optimum, 20 instances
    for seed in range(20):
        rng = np.random.default_rng(500 + seed)
        n = int(rng.integers(4, 11))
        X = rng.normal(size=(n, 2))
        best, _ = exhaustive_best_wss_k2(X)
        est = KMeans(n_clusters=2, n_init=50, random_state=seed).fit(X)
        assert est.inertia_ == pytest.approx(best, rel=1e-9, abs=1e-12)

    # (b) PAM matches exhaustive medoid-set search, 20 instances, k in {2, 3}
    for i in range(20):
        k = 2 + (i % 2)
        n = int(np.random.default_rng(700 + i).integers(2 * k + 2, 13))
        X = separable_blobs(seed=800 + i, n_points=n, k=k)
        dist = pairwise_distances(X)
        best_cost, _ = exhaustive_best_medoids(dist.square(), k)
        est = KMedoids(n_clusters=k).fit(dist)
        assert est.inertia_ == pytest.approx(best_cost, rel=1e-12)

    # (c) silhouette equals the naive O(n^2) oracle exactly at n = 300
    rng = np.random.default_rng(42)
    X = rng.normal(size=(300, 4))
    labels = rng.integers(0, 4, size=300)
    labels[:4] = np.arange(4)
    dist = pairwise_distances(X)
    rep = silhouette_report(dist, labels)
    assert rep.widths.tolist() == naive_silhouette(dist.square().tolist(),
                                                   labels.tolist())

    # (d) pairwise distances equal the naive double loop exactly
    X = rng.normal(size=(80, 5))
    dm = pairwise_distances(X)
    for i in range(80):
        for j in range(i + 1, 80):
            assert dm.get(i, j) == distance(X[i], X[j])

    print("\n[criterion 6] PASS - k-means, PAM, silhouette and pairwise all "
          "match their brute-force oracles")


def test_criterion_7_determinism(tmp_path):
    source = find_wbc_file()
    input_path = source if source else tmp_path / "synthetic.csv"
    if not source:
        input_path.write_bytes(synthetic_wbc_csv())

    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        code = cli_main([
            "analyze", str(input_path), "--k", "2", "--seed", "42",
            "--trials", "10", "--restarts", "10", "--k-max", "6",
            "--out", str(out),
        ])
        assert code == 0
        outputs.append(out)

    compared = []
    for name in ("report.json", "scatter_kmeans.svg", "scatter_pam.svg",
                 "silhouette_pam.svg", "sweep.svg"):
        a = (outputs[0] / name).read_bytes()
        b = (outputs[1] / name).read_bytes()
        assert a == b, f"{name} differs between identical runs"
        compared.append(name)
    print(f"\n[criterion 7] PASS - byte-identical across two runs: "
          f"{', '.join(compared)} "
          f"({'real data' if source else 'synthetic stand-in'})")


def test_criterion_8_pca_correctness():
    worst_trace = 0.0
    worst_comp = 0.0
    for seed in range(10):
        rng = np.random.default_rng(900 + seed)
        X = rng.normal(size=(40, 5)) * rng.uniform(0.5, 3.0, size=5)
        est = PCA2D().fit(X)

        centered = X - X.mean(axis=0)
        cov = centered.T @ centered / (X.shape[0] - 1)
        total = float(np.trace(cov))
        trace_err = abs(float(est.eigenvalues_.sum()) - total) / total
        assert trace_err <= 1e-10, f"trace error {trace_err:.2e}"
        worst_trace = max(worst_trace, trace_err)

        ref_vals, ref_vecs = np.linalg.eigh(cov)
        ref_vals, ref_vecs = ref_vals[::-1], ref_vecs[:, ::-1]
        for i in range(2):
            diff = min(
                float(np.abs(est.components_[i] - ref_vecs[:, i]).max()),
                float(np.abs(est.components_[i] + ref_vecs[:, i]).max()),
            )
            assert diff <= 1e-8, f"component {i} deviates {diff:.2e}"
            worst_comp = max(worst_comp, diff)
    print(f"\n[criterion 8] PASS - worst trace error {worst_trace:.2e}, "
          f"worst component deviation {worst_comp:.2e} over 10 fixtures")
