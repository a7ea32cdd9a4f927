from setuptools import setup

setup(
    name="tests_helpers",
    version="0.1.0",
    description="Shared fixtures and factories of the gaterace test suite",
    py_modules=["tests_helpers"],
    install_requires=["pytest", "numpy"],
)
