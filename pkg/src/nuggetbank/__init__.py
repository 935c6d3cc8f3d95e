"""Citation-anchored nugget evaluation for AI summaries of long transcripts.

The package parses page/line-addressable deposition transcripts, builds a
bank of citation-anchored fact nuggets, aligns those nuggets against
candidate summaries, verifies the summaries' inline citations, and derives
the two review artifacts consumed by the web UI: a side-by-side comparison
report and a refinement report for a single summary.
"""

__version__ = "0.1.0"
