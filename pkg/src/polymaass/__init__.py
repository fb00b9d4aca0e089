"""Eisenstein series, their s-Taylor coefficients and polyharmonic Maass form tools."""
