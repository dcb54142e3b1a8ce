""" Module with all decorators. """

import logging
from functools import wraps
from typing import Any, Callable, Tuple, TypeVar

from geometric_integrators.core.registry import Registry

F = TypeVar("F", bound=Callable[..., Any])


def registered(
    registry: Registry,
    key: str,
    summary: str = "",
    parameters: Tuple[str, ...] = (),
) -> Callable[[F], F]:
    """Decorator to add a factory to a registry under a string id.

    Parameters:
        registry: The registry receiving the factory.
        key: Id used on the command line.
        summary: One-line description printed by `list`; defaults to the
            first line of the factory docstring.
        parameters: Names of the accepted parameters (schema for `list`).
    """

    def decorator(func: F) -> F:
        description = summary or (func.__doc__ or "").strip().split("\n")[0]
        registry.add(key, func, description, parameters)
        return func

    return decorator


def logged_failure(label: str) -> Callable[[F], F]:
    """Decorator logging (then re-raising) any exception of a runner.

    Parameters:
        label: Name of the operation used in the log record.
    """

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                logging.error("%s failed: %s", label, e)
                raise

        return wrapper  # type: ignore[return-value]

    return decorator
