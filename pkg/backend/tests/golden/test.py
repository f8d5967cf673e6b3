from pyqpanda import *


def Test(q, c, temp):
    prog = QProg()
    prog.insert(assign(temp, 0))
    prog.insert(H(q))
    prog.insert(Measure(q, c))
    prog_1 = QProg()
    prog_1.insert(assign(temp, temp + 1))
    prog_1.insert(H(q))
    prog_1.insert(Measure(q, c))
    prog.insert(create_while_prog(c, prog_1))
    return prog


init()
q0 = qAlloc()
c = cAlloc()
temp = cAlloc()

result = directly_run(Test(q0,c,temp))
print(temp.eval())
print(result)

finalize()
