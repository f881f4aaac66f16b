"""lectureseg: key-frame segmentation and topic indexing for
instructional video."""

from .classifier import MediaType, classify
from .config import Config, load_config
from .content import extract_board_content, extract_sheet_content
from .costs import MatchProbabilities, closed_form_matches, fit_quadratic
from .index import build_index, read_index, write_index
from .ingest import Raster, load_frame, load_manifest
from .matching import MatchResult, match_pair
from .topics import cluster_frames, decode_runs, encode_runs
from .windows import InterestWindow, select_windows

__all__ = [
    "Config", "InterestWindow", "MatchProbabilities", "MatchResult",
    "MediaType", "Raster", "build_index", "classify", "closed_form_matches",
    "cluster_frames", "decode_runs", "encode_runs", "extract_board_content",
    "extract_sheet_content", "fit_quadratic", "load_config", "load_frame",
    "load_manifest", "match_pair", "read_index", "select_windows",
    "write_index",
]

__version__ = "0.1.0"
