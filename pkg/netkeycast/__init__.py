"""
Rate 1 multiple key-cast codes over acyclic networks, with and without a
single node eavesdropper
"""
import warnings
import sys

from .__version__ import __version__

from .field import FieldSpec, FieldElement, FieldError, choose_field
from .graph import Instance, InstanceError, InfeasibleInstanceError, load_instance, save_instance
from .lincode import LinearCode, CodeFormatError, EnumerationCapError, export_code, import_code, verify_code
from .keycast import check_feasibility, find_linear_keycast, InvariantError
from .securecast import check_conditions, vertex_coloring, ConditionError
from .generators import gen_fig3, gen_fig4, gen_secure_tight, gen_random_dag
from .utils import SecrecyMode, CheckResult, Report


if sys.warnoptions:
    # allow Deprecation warnings to appear
    warnings.simplefilter('always', DeprecationWarning)
