# Group Notation
TRIVIAL_GROUP = "0"
INFINITE_CYCLIC = "Z"
FINITE_CYCLIC = "Z/{order}"
DIRECT_SUM = " + "
POWER = "{base}^{exponent}"

# Verdicts
PASS = "PASS"
FAIL = "FAIL"
YES = "yes"
NO = "no"

# Tables
COLUMN_SEPARATOR = "  "
HEADER_RULE = "-"
SECTION_TITLE = "== {title} =="
