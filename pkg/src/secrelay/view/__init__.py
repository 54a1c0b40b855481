"""This package renders results to files and text."""

from .records import RunRecord
from .records import make_run_record
from .records import trace_path
from .records import write_run_csv
from .records import write_summary_csv
from .records import write_trace_csv
from .strings import Strings

__all__ = (
    'RunRecord',
    'Strings',
    'make_run_record',
    'trace_path',
    'write_run_csv',
    'write_summary_csv',
    'write_trace_csv',
)
