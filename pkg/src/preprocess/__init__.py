# -*- coding:utf-8 -*-
from .feature_subset import *
from .normalization import *
from .encoding import *
from .pipeline import *
