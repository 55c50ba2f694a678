from django.utils.translation import gettext_lazy as _

from djchoices import ChoiceItem, DjangoChoices


class Commands(DjangoChoices):
    volume = ChoiceItem("volume", _("Masur-Veech volume"))
    fcoeff = ChoiceItem("fcoeff", _("F-table coefficient"))
    constants = ChoiceItem(
        "constants",
        _("Siegel-Veech constant"),
        description=_("The area Siegel-Veech constant and the Lyapunov sum."),
    )
    poly = ChoiceItem("poly", _("Fixed genus polynomials"))
    table = ChoiceItem("table", _("Table over a range of poles"))
    asym = ChoiceItem("asym", _("Large n asymptotics"))
    selftest = ChoiceItem("selftest", _("Self test"))
    hodge = ChoiceItem("hodge", _("Hodge constants"))
    coefficients = ChoiceItem("coefficients", _("Spectral curve coefficients"))

    @classmethod
    def with_genus(cls) -> tuple:
        return (cls.volume, cls.fcoeff, cls.constants, cls.poly, cls.table, cls.asym, cls.hodge)

    @classmethod
    def with_poles(cls) -> tuple:
        return (cls.volume, cls.fcoeff, cls.constants, cls.asym)


class OutputFormats(DjangoChoices):
    plain = ChoiceItem("plain", _("Plain text"))
    json = ChoiceItem("json", _("JSON"))
    csv = ChoiceItem("csv", _("CSV"))


class Quantities(DjangoChoices):
    volume = ChoiceItem("volume", _("Volume"))
    carea = ChoiceItem("carea", _("Area Siegel-Veech constant"))
    lplus = ChoiceItem("lplus", _("Sum of Lyapunov exponents"))


class Routes(DjangoChoices):
    closed = ChoiceItem("closed", _("Bernoulli closed forms"))
    local = ChoiceItem("local", _("Local coordinate expansion"))


class SelftestLevels(DjangoChoices):
    quick = ChoiceItem("quick", _("Quick"))
    full = ChoiceItem("full", _("Full"), description=_("Includes genus three."))


def choice_values(choices) -> list:
    return [value for value, _label in choices.choices]
