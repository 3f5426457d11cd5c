"""Concrete syntax: AST, parser and printer."""

from .ast import *  # noqa: F401,F403
from .parser import parse, parse_ctx, parse_judgement, parse_subst, parse_term, parse_type
from .printer import print_ctx, print_decl, print_file, print_judgement, print_subst, print_term, print_type
