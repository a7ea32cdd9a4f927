try:
    from builtins import ExceptionGroup
except ImportError:
    from exceptiongroup import ExceptionGroup  # type: ignore[no-redef]

CompatExceptionGroup = ExceptionGroup


try:
    import tomllib
except ImportError:
    import tomli as tomllib  # type: ignore[no-redef]

compat_tomllib = tomllib
