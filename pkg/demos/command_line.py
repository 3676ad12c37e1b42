import json
import subprocess
import sys


def freearr(*args):
    proc = subprocess.run([sys.executable, "-m", "freearr", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout.strip()


print(freearr("freeness", "--builtin", "example-435", "--field", "q", "--json"))
print(freearr("freeness", "--builtin", "example-435", "--field", "fp", "--prime", "2", "--json"))

# exit 1: the mathematics refuses, exit 2: bad input
print(freearr("reduce", "--builtin", "pm2-lines", "--prime", "2", "--json"))
print(freearr("freeness", "--builtin", "nope", "--json"))

status, out = freearr("gen", "ziegler-f3", "--json")
print(len(json.loads(out)["hyperplanes"]), "hyperplanes over GF(3)")

status, out = freearr("charpoly", "--builtin", "ziegler-f3", "--json")
print(json.loads(out)["charpoly"]["text"], "| points:", json.loads(out)["complement_points"])

status, out = freearr("primes", "--builtin", "nonfree-s6", "--max-prime", "5", "--json")
for r in json.loads(out)["primes"]:
    print(r)
