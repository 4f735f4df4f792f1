# -*- coding:utf-8 -*-
from .kNN import *
from .GaussianNB import *
from .LinearSVM import *
from .MLP import *
from .base import *
