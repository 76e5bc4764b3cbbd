"""
Persistent application settings stored as JSON under the user's home directory.

Settings live in `~/.gotas/settings.json` (override the path with the
`GOTAS_SETTINGS` environment variable). Values are merged over built-in
defaults, so a missing or malformed file simply yields the defaults.

Authors:
    - Benjamin Dourthe (benjamin@adonamed.com)
"""
import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

_TRUE_WORDS = frozenset({'1', 'true', 'yes', 'on'})
_FALSE_WORDS = frozenset({'0', 'false', 'no', 'off'})


def _settings_file() -> str:
    """Return the settings path, honouring the GOTAS_SETTINGS override."""
    override = os.environ.get('GOTAS_SETTINGS')
    if override:
        return override
    return os.path.join(os.path.expanduser('~'), '.gotas', 'settings.json')


def _default_settings() -> Dict[str, Any]:
    """Return default settings for operators, audits and logging."""
    return {
        'universe_max_size': 1024,
        'enumeration_cap': 2 ** 20,
        # Exhaustive sweep limits: 2^n subsets, 4^n pairs
        'unary_exhaustive_max': 12,
        'binary_exhaustive_max': 8,
        'audit_sample_count': 4096,
        'audit_sample_seed': 0,
        'shape_sweep_max': 3,
        'negative_convention': 'cross',
        'audit_workers': 1,
        'log_level': 'WARNING',
    }


def _read_settings() -> Dict[str, Any]:
    """Read settings.json and merge over defaults."""
    base = dict(_default_settings())
    path = _settings_file()
    if not os.path.exists(path):
        return base
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f) or {}
        if isinstance(data, dict):
            base.update(data)
    except (OSError, ValueError) as e:
        logger.warning("ignoring unreadable settings file %s: %s", path, e)
    return base


def _write_settings(data: Dict[str, Any]) -> None:
    """Write settings.json with defaults filled for missing keys."""
    path = _settings_file()
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    merged = dict(_default_settings())
    if isinstance(data, dict):
        merged.update(data)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(merged, f, ensure_ascii=False, indent=2, sort_keys=True)


def get_app_settings() -> Dict[str, Any]:
    """Return a copy of the current settings dict."""
    return dict(_read_settings())


def set_app_settings(settings: Dict[str, Any]) -> None:
    """Replace settings with the provided dict (merged over defaults)."""
    _write_settings(dict(settings or {}))


def get_bool(key: str, default: Optional[bool] = None) -> bool:
    """Return a boolean setting with fallback to default or the defaults map."""
    if default is None:
        default = bool(_default_settings().get(key, False))
    v = _read_settings().get(key)
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v != 0
    if isinstance(v, str):
        text = v.strip().lower()
        if text in _TRUE_WORDS:
            return True
        if text in _FALSE_WORDS:
            return False
    return bool(default)


def set_bool(key: str, value: bool) -> None:
    """Persist a boolean setting."""
    cur = _read_settings()
    cur[key] = bool(value)
    _write_settings(cur)


def get_int(key: str, default: Optional[int] = None) -> int:
    """
    Return an integer setting with fallback to provided default or built-in defaults.

    Parameters:
        - key (str): Setting key name
        - default (Optional[int]): Optional fallback if key is missing or invalid

    Returns:
        - int: Retrieved setting as integer

    Raises:
        - None: Safely falls back to default on any malformed value
    """
    if default is None:
        default = int(_default_settings().get(key, 0))
    try:
        v = _read_settings().get(key)
        return int(v) if v is not None else int(default)
    except (TypeError, ValueError):
        logger.warning("setting %r is not an integer, using %d", key, default)
        return int(default)


def set_int(key: str, value: int) -> None:
    """Persist an integer setting."""
    cur = _read_settings()
    cur[key] = int(value)
    _write_settings(cur)


def get_str(key: str, default: Optional[str] = None) -> str:
    """Return a string setting with fallback to default or the defaults map."""
    if default is None:
        default = str(_default_settings().get(key, ''))
    v = _read_settings().get(key)
    return str(v) if v is not None else default


def set_str(key: str, value: str) -> None:
    """Persist a string setting."""
    cur = _read_settings()
    cur[key] = str(value)
    _write_settings(cur)
