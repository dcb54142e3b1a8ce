""" Thread-safe registries addressable by string id. """

import threading
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Generic, List, Tuple, TypeVar

from geometric_integrators.utils.exceptions import RegistryMissError

T = TypeVar("T")


@dataclass(frozen=True)
class RegistryEntry(Generic[T]):
    """One registered object with its CLI-facing description."""

    key: str
    factory: Callable[..., T]
    summary: str
    parameters: Tuple[str, ...] = ()


class Registry(Generic[T]):
    """Keyed map of factories (problems, integrators, diagnostics)."""

    def __init__(self, kind: str) -> None:
        """Create an empty registry.

        Parameters
        ----------
        kind: str
            Human-readable kind used in error messages ("problem", ...).
        """
        self.kind = kind
        self._entries: Dict[str, RegistryEntry[T]] = {}
        self._lock: threading.Lock = threading.Lock()

    def add(
        self,
        key: str,
        factory: Callable[..., T],
        summary: str = "",
        parameters: Tuple[str, ...] = (),
    ) -> None:
        """Register a factory under key.

        Raises
        ------
        ValueError
            if the key is already taken.
        """
        with self._lock:
            if key in self._entries:
                raise ValueError(f"Duplicate {self.kind} id: '{key}'.")
            logging.debug("Registering %s '%s'.", self.kind, key)
            self._entries[key] = RegistryEntry(
                key, factory, summary, tuple(parameters)
            )

    def entry(self, key: str) -> RegistryEntry[T]:
        """Return the entry registered under key.

        Raises
        ------
        RegistryMissError
            if nothing is registered under key.
        """
        with self._lock:
            found = self._entries.get(key)
        if found is None:
            logging.debug("Lookup miss for %s '%s'.", self.kind, key)
            raise RegistryMissError(self.kind, key)
        return found

    def get(self, key: str) -> Callable[..., T]:
        """Return the factory registered under key."""
        return self.entry(key).factory

    def keys(self) -> List[str]:
        """Registered ids in registration order."""
        with self._lock:
            return list(self._entries)

    def describe(self) -> List[RegistryEntry[T]]:
        """Entries in registration order, for `list` output."""
        with self._lock:
            return list(self._entries.values())

    def __contains__(self, key: object) -> bool:
        with self._lock:
            return key in self._entries
