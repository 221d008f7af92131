"""Exact verification toolkit for finite group actions on K3 surfaces and their branch curves."""
from .catalog import default_catalog, load_catalog
from .cyclo import CycloNum, parse_cyclo
from .matgroup import MatrixGroup, PointP, ProjectiveMap, generate
from .polyring import Grading, MultiPoly, parse_poly
from .report import Report, emit_report
from .scenarios import list_scenarios, run_scenario

__all__ = ["CycloNum", "Grading", "MatrixGroup", "MultiPoly", "PointP", "ProjectiveMap", "Report",
           "default_catalog", "emit_report", "generate", "list_scenarios", "load_catalog", "parse_cyclo",
           "parse_poly", "run_scenario"]
