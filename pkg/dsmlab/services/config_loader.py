"""
실행 설정 파일 로더 (flat key = value)
"""
import logging
from typing import Optional

from pydantic import ValidationError

from dsmlab.core.exceptions import ConfigError
from dsmlab.schemas.run_config import RunConfigFile
from dsmlab.simnet.config import SimConfig

logger = logging.getLogger(__name__)


def parse_config_text(text: str) -> dict[str, str]:
    """
    key = value 텍스트 파싱

    '#'으로 시작하는 줄과 빈 줄은 무시한다. 같은 키가 두 번 나오면 오류.

    Args:
        text: 설정 파일 내용

    Returns:
        dict[str, str]: 키 -> 원문 값
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{line}'")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        values[key] = value.strip()
    return values


def load_run_config(path: str, seed: Optional[int] = None) -> SimConfig:
    """
    설정 파일을 읽어 검증된 SimConfig 생성

    Args:
        path: 설정 파일 경로
        seed: 지정하면 파일의 seed 대신 사용

    Returns:
        SimConfig: 시뮬레이션 설정

    Raises:
        ConfigError: 파일 없음, 형식 오류, 알 수 없는 키, 제약 위반
    """
    try:
        with open(path, "r", encoding="utf-8") as fp:
            text = fp.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e

    try:
        cfg = RunConfigFile(**parse_config_text(text)).to_sim_config(seed=seed)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "config"
        raise ConfigError(f"{path}: {where}: {first['msg']}") from e
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"{path}: {e}") from e

    logger.debug(f"Loaded run config {path}: n={cfg.n} protocol={cfg.protocol.value} seed={cfg.seed}")
    return cfg
