# File format schemas
from dsmlab.schemas.history import *
from dsmlab.schemas.run_config import *
from dsmlab.schemas.verdict import *
