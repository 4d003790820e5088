"""Line-delimited machine report format with a versioned header.

A report is an ordered list of (key, value) string pairs.  The emitted
text starts with the version line, then one "key value" line per pair
(value may be empty or contain spaces; keys may not).  Parsing an
emitted report reproduces the pairs exactly, so downstream tooling can
round-trip payloads without a serialization library.
"""

HEADER = "#systema-report v1"


def emit_report(entries):
    lines = [HEADER]
    for key, value in entries:
        if " " in key or "\n" in key or not key:
            raise ValueError(f"bad report key {key!r}")
        value = "" if value is None else str(value)
        if "\n" in value:
            raise ValueError("report values are single-line")
        lines.append(f"{key} {value}".rstrip())
    return "\n".join(lines) + "\n"


def parse_report(text):
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise ValueError("missing report header")
    entries = []
    for line in lines[1:]:
        if not line:
            continue
        key, _, value = line.partition(" ")
        entries.append((key, value))
    return entries
