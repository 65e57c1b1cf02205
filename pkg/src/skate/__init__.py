"""Interactive knowledge acquisition toolkit.

Typed text is parsed into frame interpretations, refined through
micro-dialogues into structured templates, converted to Horn-clause-like
rules, and (for the compliance domain) executed in a calendar-aware
policy engine.
"""

__version__ = "0.1.0"
