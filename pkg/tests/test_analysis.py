import pytest

from analysis.bounds import DEFAULT_KS, bounds_csv, stretch_table
from analysis.storage import StorageSample, fit_exponent, sample_scheme, storage_csv, storage_report
from common import GraphKind, SchemeTag
from errors import InsufficientData
from graph.generators import generate
from schemes.preprocessing import preprocess_scheme
from tests.corpus import corpus_graph

PUBLISHED = {4: (9.0, 2.250), 6: (14.3, 2.389), 8: (19.6, 2.455), 10: (24.9, 2.493), 20: (51.3, 2.567),
             100: (262.4, 2.624)}


def test_table_matches_published_values() -> None:
    rows = stretch_table()
    assert [row.k for row in rows] == list(DEFAULT_KS)
    for row in rows:
        stretch, ratio = PUBLISHED[row.k]
        assert abs(float(row.stretch) - stretch) < 0.05
        assert abs(row.ratio - ratio) < 0.001


def test_float_table_for_large_k() -> None:
    rows = stretch_table([4, 10_000])
    assert rows[0].stretch == pytest.approx(9.0)
    assert 2.6 < rows[1].ratio < 2.7


def test_exact_table_agrees_with_float() -> None:
    exact = stretch_table([4, 6, 8, 10, 20], exact=True)
    assert exact[0].stretch == 9
    for row, approx in zip(exact, stretch_table([4, 6, 8, 10, 20])):
        assert float(row.stretch) == pytest.approx(approx.stretch)
    with pytest.raises(ValueError):
        stretch_table([100], exact=True)


def test_bounds_csv() -> None:
    lines = bounds_csv(stretch_table([4, 6])).splitlines()
    assert lines == ["# schema=bounds/1", "k,stretch,stretch_over_k", "4,9.0,2.250", "6,14.3,2.389"]


def _sample(n: int, average: float, k: int = 2) -> StorageSample:
    return StorageSample(name=f"g{n}", scheme="average", n=n, k=k, seed=0, total=round(average * n),
                         maximum=round(average) + 1)


def test_fit_recovers_power_law() -> None:
    samples = [_sample(n, 3 * n ** 0.5) for n in (64, 128, 256, 512, 1024)]
    fit = fit_exponent(samples)
    assert fit.exponent == pytest.approx(0.5, abs=0.01)
    assert fit.residual < 0.01
    assert fit.sizes == 5


def test_fit_needs_three_sizes() -> None:
    with pytest.raises(InsufficientData):
        fit_exponent([_sample(64, 8.0), _sample(64, 9.0), _sample(128, 11.0)])
    with pytest.raises(InsufficientData):
        storage_report([])


def test_single_state_summary_has_no_fit() -> None:
    summary = storage_report([_sample(64, 8.0)])
    assert summary.fit is None
    assert summary.average == 8.0
    assert summary.maximum == 9


def test_storage_of_a_scheme() -> None:
    g = corpus_graph(GraphKind.ERDOS_RENYI, 40, 1)
    scheme = preprocess_scheme(g, SchemeTag.AVERAGE, 2, 0, 4.0)
    sample = sample_scheme(scheme, "er40")
    assert sample.total == scheme.total_entries()
    assert sample.scheme == "average"
    assert sample.level_sizes == tuple(scheme.hierarchy.level_sizes())
    assert sample.maximum == max(scheme.entries(u) for u in range(40))


def test_storage_csv() -> None:
    with_fit = storage_report([_sample(n, n ** 0.5) for n in (64, 128, 256)])
    without_fit = storage_report([_sample(64, 8.0, k=3)])
    lines = storage_csv({("average", 2): with_fit, ("average", 3): without_fit}).splitlines()
    assert lines[0] == "# schema=storage/1"
    assert lines[1].startswith("state,scheme,n,k,seed")
    assert len([line for line in lines if not line.startswith("#")]) == 5
    fits = [line for line in lines if line.startswith("# fit")]
    assert len(fits) == 1
    assert "scheme=average k=2" in fits[0]


@pytest.mark.slow
def test_storage_scaling_exponent() -> None:
    samples = []
    for n in (64, 128, 256, 512):
        for seed in range(5):
            g = generate(GraphKind.ERDOS_RENYI, n, 0.1, (1, 100), seed)
            samples.append(sample_scheme(preprocess_scheme(g, SchemeTag.UNDIRECTED_RT, 2, seed, 4.0)))
    fit = storage_report(samples).fit
    assert 0.3 <= fit.exponent <= 0.7
