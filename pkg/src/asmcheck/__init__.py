"""Exact verification toolkit for alternating sign matrix enumeration identities."""
