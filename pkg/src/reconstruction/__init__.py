"""Load reconstruction and scenario synthesis"""

from src.reconstruction.generator import (
    AppliancePlan,
    CycleLayout,
    ScenarioResult,
    ScenarioSpec,
    build_cycle,
    reconstruct_cycle,
    reconstruct_cycles,
    reconstruct_from_tree,
    synthesize_scenario,
)

__all__ = [
    "AppliancePlan",
    "CycleLayout",
    "ScenarioResult",
    "ScenarioSpec",
    "build_cycle",
    "reconstruct_cycle",
    "reconstruct_cycles",
    "reconstruct_from_tree",
    "synthesize_scenario",
]
