# #{project_name} - Bell state hello world
# author: #{author}, created #{date_iso}
from qiskit import QuantumCircuit
from qiskit.providers.basic_provider import BasicSimulator

qc = QuantumCircuit(2, 2)
qc.h(0)
qc.cx(0, 1)
qc.measure([0, 1], [0, 1])

backend = BasicSimulator()
result = backend.run(qc, shots=1024).result()
print(result.get_counts())
