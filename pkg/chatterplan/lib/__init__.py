from .text import *
from .typeguard import *
