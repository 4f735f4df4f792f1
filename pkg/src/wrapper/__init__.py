# -*- coding:utf-8 -*-
from .folds import *
from .best_first import *
from .validation import *
