"""Kunz-coordinate arithmetic for normalized ideals of numerical semigroups."""
