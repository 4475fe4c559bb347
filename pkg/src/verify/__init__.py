"""Argument-shift verification suites and their report ledger."""
