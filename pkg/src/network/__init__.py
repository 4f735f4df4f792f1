# -*- coding:utf-8 -*-
from .MLP_net import *
