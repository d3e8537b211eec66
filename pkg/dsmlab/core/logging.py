"""
로깅 설정
"""
import logging
import os

from dsmlab.core.config import Settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(settings: Settings) -> None:
    """
    루트 로거 설정 (파일 + 콘솔)

    Args:
        settings: 로그 레벨/디렉토리를 담은 설정
    """
    handlers: list[logging.Handler] = [logging.StreamHandler()]

    log_path = settings.log_path
    if log_path:
        os.makedirs(os.path.dirname(log_path) or ".", exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_path))

    level = logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        format=LOG_FORMAT,
        level=level,
        handlers=handlers,
        force=True,
    )
