""" Core modules. """

from .registry import Registry
