from .utils import CaseEnum, SecrecyMode, Stage, VertexKind, ConstructionMode, InstanceFamily
from .utils import CheckResult, Report, node_key
from .utils import get_max_enumeration, get_max_codebooks, MAX_ENUM_ENV_NAME, MAX_CODEBOOKS_ENV_NAME
from .storage import BaseStorageBackend, FileSystemStorageBackend, load_json, save_json
from .decorators import verification
