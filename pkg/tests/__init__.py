"""Tests for mdlat."""
