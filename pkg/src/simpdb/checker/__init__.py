"""Elaboration into the model, free generation of declarations, and judgement checking."""

from .elaborate import Elaborator, Environment, elaborate
from .generate import DeclaredType, EquationInfo, GeneratorInfo, fresh_name, generate_instance
from .judge import CheckReport, Verdict, check_declaration, check_file, check_judgement, check_source
from .model import Ctx, SemSubst, SemTerm, SemType

__all__ = [
    "Elaborator",
    "Environment",
    "elaborate",
    "DeclaredType",
    "EquationInfo",
    "GeneratorInfo",
    "fresh_name",
    "generate_instance",
    "CheckReport",
    "Verdict",
    "check_declaration",
    "check_file",
    "check_judgement",
    "check_source",
    "Ctx",
    "SemSubst",
    "SemTerm",
    "SemType",
]
