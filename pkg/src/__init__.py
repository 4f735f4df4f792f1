# -*- coding:utf-8 -*-
from .utils import *
from .dataset import *
from .preprocess import *
from .tree import *
from .network import *
from .classifier import *
from .metrics import *
from .wrapper import *
