from liouville._core import *
