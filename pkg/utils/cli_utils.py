"""
CLI Utilities

Option resolution, config-file validation and run bookkeeping shared by the
subcommands.
"""

import json
import os
import time
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Dict, List, Optional

from configs import config
from models import RunManifest
from services.output_service import OutputService, OutputWriter
from utils.exceptions import UsageError
from utils.logging_utils import get_logger, log_performance, log_system_event
from version import get_version_info

logger = get_logger(__name__)

# Keys a config file may set for every command
GLOBAL_FILE_KEYS = ('workers',)


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """JSON object whose keys are long flag names with '_' instead of '-'"""
    if not path:
        return {}
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise UsageError(f"Config file not found: {path}", path=path)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Config file {path} is not valid JSON: {e}", path=path)

    if not isinstance(data, dict):
        raise UsageError(f"Config file {path} must hold a JSON object", path=path)
    return data


def validate_config_keys(data: Dict[str, Any], allowed: List[str]) -> List[str]:
    """Error messages for keys the command does not understand"""
    errors = []
    unknown = sorted(set(data) - set(allowed) - set(GLOBAL_FILE_KEYS))
    if unknown:
        errors.append(f"Unknown config keys: {', '.join(unknown)}")
    return errors


def resolve_options(args, defaults: Dict[str, Any], profile: Optional[Dict[str, Any]] = None,
                    file_values: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """default < profile < config file < explicit flag

    Flags are registered with default None, so None means "not given".
    """
    file_values = file_values or {}
    errors = validate_config_keys(file_values, list(defaults))
    if errors:
        raise UsageError('; '.join(errors), errors=errors)

    resolved = dict(defaults)
    for layer in (profile or {}, file_values):
        resolved.update({key: value for key, value in layer.items() if key in defaults})
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    return resolved


def require_options(options: Dict[str, Any], names: List[str]):
    missing = [name for name in names if options.get(name) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise UsageError(f"Missing required option(s): {flags}", missing=missing)


def default_out_dir(command: str) -> str:
    """$WEALTHMAPS_OUT_DIR/<command>, else output/<command>"""
    base = os.environ.get(config.OUTPUT_DIR_ENV) or config.OUTPUT_FOLDER
    return os.path.join(base, command)


class CommandRun:
    """One subcommand invocation: its output directory, files and manifest"""

    def __init__(self, command: str, argv: List[str], options: Dict[str, Any],
                 base_seed: Optional[int] = None):
        self.command = command
        self.options = options
        self.out_dir = options.get('out_dir') or default_out_dir(command)
        self.writer = OutputWriter(self.out_dir)
        self._start = time.perf_counter()
        self.manifest = RunManifest(
            command=command,
            argv=list(argv),
            config=dict(options, out_dir=self.out_dir),
            base_seed=base_seed,
            version=get_version_info(),
            started_at=datetime.now(timezone.utc).isoformat()
        )

    def finish(self) -> RunManifest:
        """Write manifest.json listing every file written so far"""
        duration = time.perf_counter() - self._start
        self.manifest.duration_seconds = duration
        self.manifest.outputs = dict(sorted(self.writer.outputs.items()))
        OutputService.write_manifest(self.out_dir, self.manifest)

        log_performance(self.command, duration, outputs=len(self.manifest.outputs))
        log_system_event(f"Command {self.command} wrote {len(self.manifest.outputs)} files",
                         out_dir=self.out_dir)
        return self.manifest


def log_command(func):
    """Log start and completion of a subcommand handler"""
    @wraps(func)
    def wrapper(args, *rest, **kwargs):
        logger.info(f"Running {args.command}")
        result = func(args, *rest, **kwargs)
        logger.info(f"Finished {args.command}")
        return result
    return wrapper
