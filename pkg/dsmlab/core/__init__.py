# Core vocabulary
from dsmlab.core.types import *
from dsmlab.core.clock import *
from dsmlab.core.messages import *
from dsmlab.core.history import *
