"""Post-construction verification: nothing unverified leaves a builder."""
from .errors import VerificationFailed
from .verify import verify


def checked(design, threads: int = 1):
    report = verify(design, threads=threads)
    if not report.valid:
        raise VerificationFailed(f"{design.kind} failed verification: {report.describe()}", report)
    return design
