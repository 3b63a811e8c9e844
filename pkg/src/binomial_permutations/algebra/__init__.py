"""
Algebra package: prime-field digit arithmetic, extension fields and the binomial.
"""

from .ext_field import FieldCtx, FieldElem, field_create, get_field
from .binomial import BinomialSpec, eval_f, root_count

__all__ = ['FieldCtx', 'FieldElem', 'field_create', 'get_field', 'BinomialSpec', 'eval_f', 'root_count']
