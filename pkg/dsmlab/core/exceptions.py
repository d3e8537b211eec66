"""
DSM Lab 예외 정의

각 예외는 CLI 종료 코드를 함께 가진다.
"""

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3
EXIT_PARSE_ERROR = 4
EXIT_CONFIG_ERROR = 5
EXIT_HORIZON = 6
EXIT_MISSING_LT = 7
EXIT_INTERNAL = 8


class DsmLabError(Exception):
    """DSM Lab 기본 예외"""
    exit_code = EXIT_REJECTED


class ConfigError(DsmLabError, ValueError):
    """잘못된 설정 (SimConfig, 실행 설정 파일, quorum 크기 등)"""
    exit_code = EXIT_CONFIG_ERROR


class ProtocolError(DsmLabError):
    """프로토콜 상태 기계 호출 규약 위반"""


class HistoryFormatError(DsmLabError):
    """히스토리/사이드카 파일 파싱 실패"""
    exit_code = EXIT_PARSE_ERROR


class MissingLogicalTimeError(HistoryFormatError):
    """논리 시간(lt)이 없는 이벤트"""
    exit_code = EXIT_MISSING_LT


class NotWellFormedError(DsmLabError):
    """well-formed 또는 complete 하지 않은 히스토리"""
    exit_code = EXIT_PARSE_ERROR


class NotSequentialError(DsmLabError):
    """순차 히스토리가 아님"""
    exit_code = EXIT_PARSE_ERROR


class MalformedInstrumentationError(DsmLabError):
    """타임스탬프 계측 정보가 일관되지 않음"""


class CheckerError(DsmLabError):
    """검사기 내부 불변식 위반"""
    exit_code = EXIT_INTERNAL


class OracleCapExceeded(DsmLabError):
    """브루트포스 오라클 연산 수 상한 초과"""
    exit_code = EXIT_UNDECIDED


class SimulationHorizonExceeded(DsmLabError):
    """시뮬레이션이 max_ticks 안에 정지 상태에 도달하지 못함"""
    exit_code = EXIT_HORIZON
