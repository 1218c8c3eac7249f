import os
import sys

_mod_dir = os.environ.get("NODALARCS_PYMOD_DIR")
if _mod_dir and _mod_dir not in sys.path:
    sys.path.insert(0, _mod_dir)
