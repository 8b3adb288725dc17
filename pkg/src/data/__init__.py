"""
Data package initialization
"""

from .csv_io import (
    EventRecord,
    read_events_csv,
    read_power_csv,
    read_truth_csv,
    write_events_csv,
    write_power_csv,
    write_truth_csv,
)
from .spec_files import read_grid_file, read_scenario_file

__all__ = [
    "EventRecord",
    "read_events_csv",
    "read_power_csv",
    "read_truth_csv",
    "write_events_csv",
    "write_power_csv",
    "write_truth_csv",
    "read_grid_file",
    "read_scenario_file",
]
