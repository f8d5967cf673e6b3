from pyqpanda import *


def Bell(q, c):
    prog = QProg()
    prog.insert(H(q[0]))
    prog.insert(CNOT(q[0], q[1]))
    prog.insert(measure_all(q, c))
    return prog
