from .utils import (
    atomic_write_text,
    chunks,
    format_float,
    parallel_map,
    parse_pair,
    recursive_map,
    to_jsonable,
)

__all__ = [
    "atomic_write_text",
    "chunks",
    "format_float",
    "parallel_map",
    "parse_pair",
    "recursive_map",
    "to_jsonable",
]
