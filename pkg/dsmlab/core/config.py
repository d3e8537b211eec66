"""Lab configuration using pydantic-settings"""
import os
from functools import lru_cache
from pydantic_settings import BaseSettings

from dsmlab import __version__

# 프로젝트 루트 경로 설정
BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


class Settings(BaseSettings):
    """DSM Lab 설정"""
    # App
    APP_NAME: str = "DSM Lab"
    APP_VERSION: str = __version__
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"  # 빈 문자열이면 파일 로그 비활성화
    LOG_FILE: str = "dsmlab.log"

    # Checker
    LIN_MAX_STATES: int = 10_000_000
    ORACLE_MAX_OPS: int = 10

    # Simulation
    DEFAULT_MAX_TICKS: int = 1_000_000

    # Fuzz campaign
    FUZZ_WORKERS: int = 1

    # Export (디렉토리 없는 .xlsx 파일 이름의 저장 위치)
    EXPORT_DIR: str = "data/exports"

    @property
    def log_path(self) -> str | None:
        """로그 파일 전체 경로 (비활성화 시 None)"""
        if not self.LOG_DIR:
            return None
        return os.path.join(self.LOG_DIR, self.LOG_FILE)

    class Config:
        env_file = os.path.join(BASE_DIR, "config/.env")
        env_file_encoding = "utf-8"
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """설정 싱글톤"""
    return Settings()
