# pylint: disable=invalid-name,import-error
import shlex
from pathlib import Path
from typing import Union

from invoke import Context, task

GOLDEN_DIR = Path("tests/data/golden")


def q(value: Union[Path, str]) -> str:
    return shlex.quote(str(value))


@task
def cov(c: Context, output="coverage.xml", markers="not nightly"):
    """Runs the test suite once under coverage, the nightly checks are left out by default"""
    c.run(f"coverage run -m pytest -m {q(markers)}", pty=True)
    if output.endswith(".xml"):
        c.run(f"coverage xml -o {q(output)}")
    else:
        c.run(f"coverage report > {q(output)}")


@task
def deps_compile(c: Context, upgrade=False):
    flags = "-q --allow-unsafe --strip-extras" + (" --upgrade" if upgrade else "")
    promises = [
        c.run(f"pip-compile {q(raw)} -o {q(Path('requirements') / raw.name)} {flags}", asynchronous=True)
        for raw in sorted(Path("requirements/raw").glob("*.txt"))
    ]
    for promise in promises:
        promise.join()

    for file in Path("requirements").glob("*.txt"):
        c.run(fr'sed -i -E "s/-e file:.+\/tests\/tests_helpers/-e .\/tests\/tests_helpers/" {q(file)}')
        c.run(fr'sed -i -E "s/-e file:.+\/benchmarks/-e .\/benchmarks/" {q(file)}')


@task
def golden(c: Context):
    """Renders the start view of every shipped track again into the committed masks"""
    names = [line.split()[0] for line in c.run("gaterace tracks list", hide=True).stdout.splitlines()]
    for name in names:
        c.run(f"gaterace render-obs --track {q(name)} --corruption 0 --output {q(GOLDEN_DIR / f'start-{name}.pgm')}")
    c.run(f"git status --short {q(GOLDEN_DIR)}")


@task
def nightly(c: Context, py_target="py312"):
    c.run(f"tox -e {q(py_target)}-nightly", pty=True)


@task
def smoke(c: Context, out="runs/smoke", steps=50_000):
    c.run(f"gaterace train --mode state --track mini --steps {steps} --workers 1 --out {q(out)}", pty=True)
    checkpoint = sorted(Path(out).glob("ckpt-*.bin"))[-1]
    c.run(
        f"gaterace eval --mode state --track mini --checkpoint {q(checkpoint)} --n-envs 8 --out {q(out)}",
        pty=True,
    )


@task
def test_on_ci(c: Context, py_target, cov_output=None):
    if cov_output is None:
        c.run(f"tox -e {q(py_target)}", pty=True)
    else:
        cov(c, output=cov_output)
