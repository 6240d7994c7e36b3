import pytest

from configuration.settings import Settings, load_settings, parse_settings
from errors import ClientError


def test_parse_typed_values() -> None:
    content = "# sweep defaults\nk = 4\nbudget=3.5\npairs=sample:10:2\n\njobs=3\n"
    assert parse_settings(content) == {"k": 4, "budget": 3.5, "pairs": "sample:10:2", "jobs": 3}


@pytest.mark.parametrize("content", ["colour=blue\n", "k=two\n", "k\n"])
def test_parse_rejects_bad_content(content: str) -> None:
    with pytest.raises(ClientError):
        parse_settings(content)


def test_defaults() -> None:
    assert load_settings() == Settings()
    assert Settings().k == 2
    assert Settings().pairs == "all"


def test_flags_override_file(tmp_path) -> None:
    path = tmp_path / "rtroute.conf"
    path.write_text("k=3\nseed=9\ndensity=0.3\n")
    settings = load_settings(path, k=5, seed=None, jobs=None)
    assert settings.k == 5
    assert settings.seed == 9
    assert settings.density == 0.3
    assert settings.jobs == 1


def test_missing_config_file(tmp_path) -> None:
    with pytest.raises(ClientError):
        load_settings(tmp_path / "missing.conf")
