# Project
TITLE = "Real THH Shadows"
REPORT_SCHEMA_VERSION = "1.0"

# Exit Codes
EXIT_OK = 0
EXIT_INPUT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_CERTIFICATE_FAILURE = 4

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Output
OUTPUT_FORMATS = ("table", "json")
DEFAULT_OUTPUT_FORMAT = "table"
JSON_INDENT = 2

# Finite Enumeration
EXHAUSTIVE_LIMIT = 16
FUNCTIONAL_SEARCH_RANGE = (-1, 0, 1)
MEMBERSHIP_SLACK = 2

# Nerves
DEFAULT_Q_MAX = 4
PI0_WINDOW_STEPS = 3
DEFAULT_PI0_BOUND = 4

# Projective Spaces
DEFAULT_P1_WINDOW = 5
DEFAULT_PN_WINDOW = 3
PN_CHAIN_CHECK_RADIUS = 1
MAX_PROJECTIVE_DIMENSION = 4
PROJECTIVE_CHOICES = ("1", "sigma", "2", "3", "4")

# Controllers
CONTROLLER_PACKAGE = "controllers"
CONTROLLER_SUFFIX = "_controller"
