"""Enumerate one Foata-normal execution per equivalence class of a small
concurrent program under SC, TSO, PSO or RMO, and replay them to decide
litmus-test conditions."""

from .arch import Architecture, by_name, pso, rmo, sc, tso
from .evaluation import check_condition, reachable, run_execution
from .events import Assert, Event, Fence, Kind, Load, RegOp, Store
from .gen import exec_tree, initial_config, normal_executions
from .lang import Litmus, expand, format_litmus, parse_litmus
from .trace import checker_extend, checker_init, decompose, is_foata_normal, render_execution

__all__ = [
    "Architecture",
    "Assert",
    "Event",
    "Fence",
    "Kind",
    "Litmus",
    "Load",
    "RegOp",
    "Store",
    "by_name",
    "check_condition",
    "checker_extend",
    "checker_init",
    "decompose",
    "exec_tree",
    "expand",
    "format_litmus",
    "initial_config",
    "is_foata_normal",
    "normal_executions",
    "parse_litmus",
    "pso",
    "reachable",
    "render_execution",
    "rmo",
    "run_execution",
    "sc",
    "tso",
]
