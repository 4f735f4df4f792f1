# -*- coding:utf-8 -*-
from .confusion import *
from .timing import *
from .benchmark import *
