"""Figure renderer for quadropt datasets.

Consumes the CSV files and JSON sidecars written by the quadropt CLI and
lays them out as multi-panel figures.  No physics is computed here; every
number shown, including annotation line positions, comes from the files.
"""

__version__ = "0.1.0"

from figgen.spec import FigureSpec, PanelSpec, build_spec  # noqa: F401
from figgen.render import render  # noqa: F401
