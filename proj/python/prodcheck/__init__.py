"""Guardedness and liveness checks for logic programs."""

from ._core import (
    ExistentialVariableError,
    FileError,
    ParseError,
    Program,
    check,
    default_fuse,
    derive,
    load_program,
    parse_program,
    trs,
    tree,
)

__all__ = [
    "ExistentialVariableError",
    "FileError",
    "ParseError",
    "Program",
    "check",
    "default_fuse",
    "derive",
    "load_program",
    "parse_program",
    "trs",
    "tree",
]
