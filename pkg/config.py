"""
Configuração do toolkit via variáveis de ambiente (.env suportado)
"""
import os
import logging
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

from errors import ConfigError

load_dotenv()

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
ALLOWED_PHASE_BOUNDS = (1, 2, 4, 8)


@dataclass(frozen=True)
class PsiSettings:
    """Caráter aditivo ψ: valuação de 2 e expoente do condutor"""
    e2: int = 0
    d: int = 0


@dataclass(frozen=True)
class EnumerationSettings:
    """Limites para enumeração exaustiva"""
    max_rank: int = 6
    phase_bound: int = 8
    workers: int = 4


@dataclass(frozen=True)
class ToolkitConfig:
    psi: PsiSettings = field(default_factory=PsiSettings)
    enumeration: EnumerationSettings = field(default_factory=EnumerationSettings)
    app_env: str = ''
    log_level: Optional[str] = None

    @property
    def is_production(self) -> bool:
        return self.app_env == 'production'


def _int_from_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} deve ser inteiro (recebido: {raw!r})")
    if value < minimum:
        raise ConfigError(f"{name} deve ser >= {minimum} (recebido: {value})")
    return value


def load_config() -> ToolkitConfig:
    """Ler configuração do ambiente, validando valores"""
    app_env = os.getenv('APP_ENV', '').lower()
    try:
        e2 = _int_from_env('MPSO_E2', 0)
        d = _int_from_env('MPSO_D_PSI', 2 * e2)
        max_rank = _int_from_env('MPSO_MAX_RANK', 6)
        phase_bound = _int_from_env('MPSO_PHASE_BOUND', 8, minimum=1)
        workers = _int_from_env('MPSO_WORKERS', 4, minimum=1)
        if phase_bound not in ALLOWED_PHASE_BOUNDS:
            raise ConfigError(f"MPSO_PHASE_BOUND deve dividir 8 (recebido: {phase_bound})")
    except ConfigError as e:
        if app_env == 'production':
            logging.critical(f"Configuração inválida em produção: {e}")
        raise

    return ToolkitConfig(
        psi=PsiSettings(e2=e2, d=d),
        enumeration=EnumerationSettings(max_rank=max_rank, phase_bound=phase_bound, workers=workers),
        app_env=app_env,
        log_level=os.getenv('MPSO_LOG_LEVEL'),
    )


_config: Optional[ToolkitConfig] = None


def get_config() -> ToolkitConfig:
    """Obter instância global da configuração"""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    global _config
    _config = None


def configure_logging(verbose: bool = False) -> None:
    """Configurar logging conforme ambiente (APP_ENV) ou MPSO_LOG_LEVEL"""
    config = get_config()
    if verbose:
        level = logging.DEBUG
    elif config.log_level:
        level = getattr(logging, config.log_level.upper(), logging.WARNING)
    elif config.is_production:
        level = logging.ERROR
    elif config.app_env == 'development':
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
