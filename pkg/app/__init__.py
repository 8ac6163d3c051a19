# Barnette-class Hamilton cycles
