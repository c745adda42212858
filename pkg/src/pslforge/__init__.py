"""Low peak-sidelobe binary sequences: search, verification and exhaustive checks."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("pslforge")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .codec import decode, encode, normalize
from .optimizer import SearchConfig, SearchResult, search
from .oracle import enumerate_psl_histogram, min_psl_exhaustive
from .sequence import BinarySequence, SidelobeProfile, aacf, fitness, flip_delta, merit_factor, psl, psl_db
from .verifier import load_tables, verify_all, verify_row

__all__ = [
    "BinarySequence", "SidelobeProfile", "SearchConfig", "SearchResult",
    "aacf", "psl", "psl_db", "merit_factor", "fitness", "flip_delta",
    "encode", "decode", "normalize", "search",
    "min_psl_exhaustive", "enumerate_psl_histogram",
    "load_tables", "verify_row", "verify_all",
]
