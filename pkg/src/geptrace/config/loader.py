"""Configuration file loader and validator."""

from pathlib import Path
from typing import Optional

import yaml
from pydantic import ValidationError

from ..errors import ConfigError
from .schema import Settings

DEFAULT_CONFIG_NAME = "geptrace.yaml"


def find_config(config_path: Optional[Path] = None) -> Optional[Path]:
    """
    Locate the configuration file.

    An explicit path must exist; otherwise ./geptrace.yaml is used when present.

    Raises:
        ConfigError: If an explicit path does not exist
    """
    if config_path is not None:
        config_path = Path(config_path)
        if not config_path.exists():
            raise ConfigError(f"config file not found: {config_path}")
        return config_path
    candidate = Path(DEFAULT_CONFIG_NAME)
    return candidate if candidate.exists() else None


def load_config(config_path: Optional[Path] = None) -> Settings:
    """
    Load and validate settings, falling back to built-in defaults.

    Args:
        config_path: Path to a YAML config file (default: ./geptrace.yaml if present)

    Returns:
        Validated Settings object

    Raises:
        ConfigError: If the file is missing, is not valid YAML, or fails validation
    """
    path = find_config(config_path)
    if path is None:
        return Settings()

    try:
        data = yaml.safe_load(path.read_text()) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: invalid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")

    try:
        return Settings(**data)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e


def dump_settings(settings: Settings) -> str:
    """Render settings as YAML."""
    return yaml.safe_dump(settings.model_dump(), default_flow_style=False, sort_keys=False, indent=2)


def write_default_config(path: Path, force: bool = False) -> Path:
    """
    Write a default configuration file.

    Raises:
        ConfigError: If the file exists and force is not set
    """
    path = Path(path)
    if path.exists() and not force:
        raise ConfigError(f"config file already exists: {path} (use --force to overwrite)")
    header = (
        "# geptrace configuration\n"
        "# ascent.step_size: a positive number or \"auto\" (0.1 / (||A||_F (1 + ||B||_F)))\n"
        "# ascent.max_iters / ascent.grad_tol: null means 50*d*k and 1e-8*(1 + max|A_ij|)\n\n"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(header + dump_settings(Settings()))
    return path
