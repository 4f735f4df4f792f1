# -*- coding:utf-8 -*-
from .errors import *
from .config import *
from .artifact import *
from .policies import *
from .sampling_fn import *
from .logger import *
