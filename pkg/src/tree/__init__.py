# -*- coding:utf-8 -*-
from .criteria import *
from .C45_tree import *
from .random_forest import *
