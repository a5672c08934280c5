from dotenv import load_dotenv
import os

load_dotenv()

PROJECT_NAME = 'ahg_hgm'

VERSION = '0.1.0'


# Logging settings
LOG_LEVEL = os.getenv('AHG_LOG_LEVEL', 'INFO')
LOG_DIR = os.getenv('AHG_LOG_DIR', 'logs')
LOG_FILE = os.getenv('AHG_LOG_FILE', os.path.join(LOG_DIR, 'ahg_hgm.log'))
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# Macaulay matrices: the degree T grows on failure up to this cap
T_CAP = int(os.getenv('AHG_T_CAP', '12'))

# Term order used when a problem file does not name one (lex | grevlex)
DEFAULT_ORDER = os.getenv('AHG_DEFAULT_ORDER', 'grevlex')

# Significant digits of the decimal shadow printed next to exact values
DECIMAL_DIGITS = int(os.getenv('AHG_DECIMAL_DIGITS', '6'))

# `eval --verify-oracle` refuses fibers larger than this
VERIFY_FIBER_LIMIT = int(os.getenv('AHG_VERIFY_FIBER_LIMIT', '100000'))

# Library parallelism (fiber DFS, Macaulay rows) is opt-in
THREADS = int(os.getenv('AHG_THREADS', '1'))

# Seed of the "generic" rational point used to read off standard monomials
GENERIC_SEED = int(os.getenv('AHG_GENERIC_SEED', '20140409'))
