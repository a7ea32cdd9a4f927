import inspect
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, TypeVar

from adaptix.load_error import LoadError

from ..common import Mode
from ..errors import (
    GateraceError,
    InvalidArgumentError,
    InvalidParametersError,
    NumericalAbortError,
    TrackValidationError,
    UnknownTrackError,
)
from ..track.randomization import AXES
from . import commands

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3
EXIT_NUMERICAL = 4

USAGE_ERRORS = (
    LoadError,
    InvalidArgumentError,
    InvalidParametersError,
    TrackValidationError,
    UnknownTrackError,
    FileNotFoundError,
)

# namespace attribute -> dotted run config key
CONFIG_FLAGS: Mapping[str, str] = {
    "seed": "seed",
    "workers": "workers",
    "out": "out",
    "log_level": "log_level",
    "mode": "mode",
    "track": "track",
    "quad_params": "quad_params",
    "camera": "camera",
    "total_steps": "ppo.total_steps",
    "eval_steps": "eval.steps",
    "n_envs": "eval.n_envs",
    "laps": "eval.laps",
    "start_jitter": "eval.start_jitter",
    "magnitudes": "eval.magnitudes",
}

T = TypeVar("T")


def call_by_namespace(func: Callable[..., T], namespace: Namespace) -> T:
    sig = inspect.signature(func)
    kwargs_for_func = (vars(namespace).keys() & sig.parameters.keys())
    return func(**{key: getattr(namespace, key) for key in kwargs_for_func})


def config_overrides(namespace: Namespace) -> Dict[str, Any]:
    return {
        dotted_key: getattr(namespace, attr)
        for attr, dotted_key in CONFIG_FLAGS.items()
        if getattr(namespace, attr, None) is not None
    }


def _add_config_arguments(parser: ArgumentParser) -> None:
    group = parser.add_argument_group("run config")
    group.add_argument("--config", dest="config_path", type=Path, help="TOML run config, flags override it")
    group.add_argument("--seed", type=int)
    group.add_argument("--workers", type=int, help="threads stepping environments, 0 means one per logical core")
    group.add_argument("--out", help="output directory")
    group.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper)
    group.add_argument("--mode", choices=[mode.value for mode in Mode])
    group.add_argument("--track", help="shipped track name or path to a track file")
    group.add_argument("--quad-params", help="TOML file with vehicle parameters")
    group.add_argument("--camera", help="TOML file with camera intrinsics and mount")


def _add_policy_arguments(parser: ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--checkpoint", type=Path)
    source.add_argument("--replay", type=Path, help="CSV of normalized actions a_c, a_wx, a_wy, a_wz")
    parser.add_argument("--n-envs", type=int)
    parser.add_argument("--steps", dest="eval_steps", type=int, help="step budget per rollout")
    parser.add_argument("--laps", type=int)
    parser.add_argument("--start-jitter", type=float)
    parser.add_argument("--csv", dest="csv_path", type=Path)


def make_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="gaterace", description="Vision-based drone racing: training and evaluation")
    subparsers = parser.add_subparsers(required=True)

    train_parser = subparsers.add_parser("train", help="train a policy with PPO")
    train_parser.set_defaults(command="train")
    _add_config_arguments(train_parser)
    train_parser.add_argument("--steps", dest="total_steps", type=int, help="environment step budget")
    train_parser.add_argument("--resume", type=Path, metavar="DIR", help="continue the run stored in DIR")

    eval_parser = subparsers.add_parser("eval", help="evaluate a policy on a track")
    eval_parser.set_defaults(command="eval")
    _add_config_arguments(eval_parser)
    _add_policy_arguments(eval_parser)
    eval_parser.add_argument("--episode-log", type=Path, help="CSV with every step of the first rollout")

    sweep_parser = subparsers.add_parser("sweep", help="evaluate under displaced gates")
    sweep_parser.set_defaults(command="sweep")
    _add_config_arguments(sweep_parser)
    _add_policy_arguments(sweep_parser)
    sweep_parser.add_argument("--magnitudes", type=float, nargs="+")
    sweep_parser.add_argument("--axes", choices=AXES, nargs="+", default=list(AXES))

    render_parser = subparsers.add_parser("render-obs", help="write gate mask images as PGM")
    render_parser.set_defaults(command="render-obs")
    _add_config_arguments(render_parser)
    pose = render_parser.add_mutually_exclusive_group()
    pose.add_argument("--position", type=float, nargs=3, metavar=("X", "Y", "Z"))
    pose.add_argument("--trajectory", type=Path, help="CSV with p_x..p_z and q_w..q_z columns")
    render_parser.add_argument("--rpy", type=float, nargs=3, metavar=("ROLL", "PITCH", "YAW"), help="degrees")
    render_parser.add_argument("--corruption", type=float)
    render_parser.add_argument("--output", type=Path, help="PGM file, or a directory with --trajectory")

    bench_parser = subparsers.add_parser("bench", help="measure mask rendering and dynamics throughput")
    bench_parser.set_defaults(command="bench")
    _add_config_arguments(bench_parser)
    bench_parser.add_argument("--gates", type=int, nargs="+", default=[0, 1, 2, 4, 7, 8])
    bench_parser.add_argument("--iterations", type=int, default=1000)
    bench_parser.add_argument("--dynamics-steps", type=int, default=100_000)

    tracks_parser = subparsers.add_parser("tracks", help="list or validate tracks")
    tracks_subparsers = tracks_parser.add_subparsers(required=True)
    list_parser = tracks_subparsers.add_parser("list")
    list_parser.set_defaults(command="tracks-list")
    validate_parser = tracks_subparsers.add_parser("validate")
    validate_parser.set_defaults(command="tracks-validate")
    validate_parser.add_argument("files", type=Path, nargs="+")
    return parser


COMMANDS: Mapping[str, Callable[..., int]] = {
    "train": commands.cmd_train,
    "eval": commands.cmd_eval,
    "sweep": commands.cmd_sweep,
    "render-obs": commands.cmd_render_obs,
    "bench": commands.cmd_bench,
    "tracks-list": commands.cmd_tracks_list,
    "tracks-validate": commands.cmd_tracks_validate,
}


def _notes(exc: BaseException) -> List[str]:
    return list(getattr(exc, "__notes__", ()))


def describe_error(exc: BaseException, depth: int = 0) -> Iterable[str]:
    indent = "  " * depth
    yield f"{indent}{type(exc).__name__}: {exc}"
    for note in _notes(exc):
        yield f"{indent}  {note}"
    for sub_exc in getattr(exc, "exceptions", ()):
        yield from describe_error(sub_exc, depth + 1)


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, NumericalAbortError):
        return EXIT_NUMERICAL
    if isinstance(exc, USAGE_ERRORS):
        return EXIT_USAGE
    return EXIT_RUNTIME


def run(namespace: Namespace) -> int:
    try:
        func = COMMANDS[namespace.command]
    except KeyError:
        raise TypeError from None
    namespace.overrides = config_overrides(namespace)
    return call_by_namespace(func, namespace)


def main(args: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        namespace = parser.parse_args(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return run(namespace)
    except (GateraceError, *USAGE_ERRORS) as exc:
        for line in describe_error(exc):
            print(f"gaterace: {line}", file=sys.stderr)  # noqa: T201
        return exit_code_for(exc)
