import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from common import logger
from errors import ClientError

_SECTION = "rtroute"


@dataclass(frozen=True)
class Settings:
    k: int = 2
    seed: int = 0
    budget: float = 2.0
    """size budget constant c of the bunch-size check"""
    max_retries: int = 50
    jobs: int = 1
    hop_budget_factor: int = 8
    pairs: str = "all"
    density: float = 0.1
    wmin: int = 1
    wmax: int = 100


def _deserialize_key_values(content: str) -> dict[str, str]:
    config_parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=None)
    config_parser.optionxform = str
    try:
        config_parser.read_string(f"[{_SECTION}]\n{content}")
    except configparser.Error as e:
        raise ClientError(f"Error while reading config: {repr(e)}")
    return dict(config_parser[_SECTION])


def parse_settings(content: str) -> dict[str, Any]:
    """
    Reads `key=value` lines (`#` starts a comment) into typed overrides of `Settings`.
    @raise ClientError: unknown key or a value of the wrong type
    """
    types = {f.name: f.type for f in fields(Settings)}
    overrides: dict[str, Any] = {}
    for key, raw in _deserialize_key_values(content).items():
        if key not in types:
            raise ClientError(f"Unknown config key [{key}]")
        converter = types[key]
        try:
            overrides[key] = converter(raw.strip())
        except ValueError:
            raise ClientError(f"Config key [{key}] expects {converter.__name__}, got [{raw}]")
    return overrides


def load_settings(path: str | Path | None = None, **flags: Any) -> Settings:
    """defaults, overridden by the config file, overridden by flags that are not None"""
    settings = Settings()
    if path is not None:
        try:
            content = Path(path).read_text()
        except OSError as e:
            raise ClientError(f"Cannot read config file [{path}]: {repr(e)}")
        file_values = parse_settings(content)
        logger.debug(f"Config file [{path}] sets [{sorted(file_values)}]")
        settings = replace(settings, **file_values)
    given = {key: value for key, value in flags.items() if value is not None and key in settings.__dataclass_fields__}
    return replace(settings, **given)
