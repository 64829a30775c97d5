"""
Output Provenance

Every file the CLI writes gets a `<file>.meta.json` sidecar with library
versions, the seed and a hash of the configuration that produced it.
Sidecars hold no timestamps, so reruns with the same seed write
identical sidecars.
"""

import hashlib
import json
import logging
import platform
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd
import scipy


logger = logging.getLogger(__name__)

PACKAGE_VERSION = "0.1.0"


def library_versions() -> Dict[str, str]:
    return {
        'lobcal': PACKAGE_VERSION,
        'python': platform.python_version(),
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
    }


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    return value


def config_hash(config: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON form of `config`"""
    canonical = json.dumps(_jsonable(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def meta_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(output.name + '.meta.json')


def write_meta(
    output: Union[str, Path],
    command: str,
    seed: Optional[int],
    config: Dict[str, Any],
) -> Path:
    """
    Write the provenance sidecar of one output file

    Args:
        output: File the sidecar describes
        command: CLI subcommand that produced it
        seed: Master seed of the run
        config: Everything besides the seed that determines the output

    Returns:
        Sidecar path
    """
    path = meta_path(output)
    meta = {
        'file': Path(output).name,
        'command': command,
        'seed': seed,
        'config_hash': config_hash(config),
        'config': _jsonable(config),
        'versions': library_versions(),
    }
    path.write_text(json.dumps(meta, indent=2, sort_keys=True), encoding='utf-8')
    logger.debug(f"Wrote {path.name}", extra={'path': str(path)})
    return path
