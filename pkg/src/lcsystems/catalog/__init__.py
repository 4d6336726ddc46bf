"""Classification data: parameterised graph and matrix families."""
from .audit import AuditConfig, AuditReport, Discrepancy, FamilyAudit, audit_family, sample_assignments, validate_catalog
from .families import (
    CatalogFamily,
    CatalogMatch,
    Claim,
    ParamSpec,
    default_catalog,
    get_family,
    identify,
    instantiate,
    load_catalog,
    verify_match,
)

__all__ = [
    "AuditConfig", "AuditReport", "CatalogFamily", "CatalogMatch", "Claim", "Discrepancy",
    "FamilyAudit", "ParamSpec", "audit_family", "default_catalog", "get_family", "identify",
    "instantiate", "load_catalog", "sample_assignments", "validate_catalog", "verify_match",
]
