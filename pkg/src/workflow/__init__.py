# Workflow Package - Orchestration
from .pipeline import CHOICES, TABLE_COLUMNS, CaseStudyOptions, CaseStudyPipeline, CaseStudyState, ModellingChoice

__all__ = [
    "CHOICES",
    "TABLE_COLUMNS",
    "CaseStudyOptions",
    "CaseStudyPipeline",
    "CaseStudyState",
    "ModellingChoice",
]
