from gaterace._internal.config.loading import (
    ENV_PREFIX,
    SNAPSHOT_FILE,
    dump_run_config,
    load_camera,
    load_quad_params,
    load_record,
    resolve_run_config,
    write_snapshot,
)
from gaterace._internal.config.retort import config_retort
from gaterace._internal.config.schema import ACYCLIC_GAMMA, RunConfig

__all__ = (
    "RunConfig",
    "config_retort",
    "resolve_run_config",
    "load_record",
    "load_quad_params",
    "load_camera",
    "dump_run_config",
    "write_snapshot",
    "ENV_PREFIX",
    "SNAPSHOT_FILE",
    "ACYCLIC_GAMMA",
)
