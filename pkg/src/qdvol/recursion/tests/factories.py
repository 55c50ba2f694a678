from fractions import Fraction

import factory

from ..curves import CurveParams


class CurveParamsFactory(factory.Factory):
    a = Fraction(-1)
    b = 2

    class Meta:
        model = CurveParams

    class Params:
        rescaled = factory.Trait(a=Fraction(-4))
        cubic = factory.Trait(a=Fraction(-4), b=3)
