"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can report failures in a stable form.
"""


class CospanError(Exception):
    code = "E_GENERIC"


class CodomainMismatch(CospanError, ValueError):
    code = "E_CODOMAIN"


class DomainMismatch(CospanError, ValueError):
    code = "E_DOMAIN"


class NotACocone(CospanError, ValueError):
    code = "E_COCONE"


class NotBijective(CospanError, ValueError):
    code = "E_BIJECTION"


class FootMismatch(CospanError, ValueError):
    code = "E_FOOT"


class BoundaryMismatch(CospanError, ValueError):
    code = "E_BOUNDARY"


class DecorationMismatch(CospanError, ValueError):
    code = "E_DECORATION"


class BackendMismatch(CospanError, ValueError):
    code = "E_BACKEND"


class IndexMismatch(CospanError, ValueError):
    code = "E_INDEX"


class DimensionMismatch(CospanError, ValueError):
    code = "E_DIMENSION"


class ParseError(CospanError, ValueError):
    code = "E_PARSE"
