"""Exception hierarchy.

Every domain error carries a short ``code`` so the command line front end can
print a structured message instead of a traceback.
"""


class CiliatedError(Exception):
    code = "Error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


def _make(name, base=CiliatedError, doc=None):
    cls = type(name, (base,), {"code": name, "__doc__": doc})
    return cls


class ParseError(CiliatedError, ValueError):
    code = "ParseError"


class InvalidSurface(CiliatedError, ValueError):
    code = "InvalidSurface"


class InvalidArc(CiliatedError, ValueError):
    code = "InvalidArc"


NegativeCount = _make("NegativeCount", doc="The surface admits no triangulation.")
NonIntegral = _make("NonIntegral", doc="Triangle bookkeeping is not integral.")
InfiniteType = _make("InfiniteType", doc="The arc set of the surface is infinite.")
MixedSurface = _make("MixedSurface", doc="Arcs from different surface models were combined.")
ArcNotInTriangulation = _make("ArcNotInTriangulation")
NotFlippable = _make("NotFlippable")
AmbiguousFlip = _make("AmbiguousFlip", doc="More than one replacement arc exists.")
SelfGlued = _make("SelfGlued", doc="Both sides of the arc bound the same triangle.")
SelfFolded = _make("SelfFolded", base=SelfGlued, doc="The arc is the interior edge of a self-folded triangle.")
MalformedTriangulation = _make("MalformedTriangulation")
OracleMismatch = _make("OracleMismatch", doc="Two independent constructions disagree.")
EmptyComplex = _make("EmptyComplex")
TooLarge = _make("TooLarge")
Unsupported = _make("Unsupported")
Inconclusive = _make("Inconclusive")
Punctured = _make("Punctured", doc="The construction is only defined for unpunctured surfaces.")
UnlabeledSide = _make("UnlabeledSide")
IndexOutOfRange = _make("IndexOutOfRange")
