# -*- coding:utf-8 -*-
from .unsw_nb15 import *
from .synthetic import *
