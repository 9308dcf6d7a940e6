"""Published reference decimals, transcribed digit for digit.

Scientific-notation entries keep the printed mantissa and exponent;
"1/2" in the key-point table is stored as 0.5.  ``DATASET_SHA256`` pins
the whole dataset so an accidental edit shows up as a test failure.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

SRC_XI_COEFFS = "even Taylor coefficients of xi(s + 1/2), list to order 10"
SRC_D = "Taylor coefficients D_n of xi(s - 1/2) about s = 0"
SRC_EP = "Taylor coefficients E_n^+ of xi_+(s) about s = 0"
SRC_EM = "Taylor coefficients E_n^- of xi_-(s) about s = 0"
SRC_F = "Taylor coefficients F_n of xi(s) about s = 0"
SRC_SIGMA = "sums sigma_1..sigma_10 of inverse powers of the zeros"
SRC_WH = "w-series of xi(1/(1-w) + 1/2) to order 12"
SRC_WM = "w-series of xi(1/(1-w) - 1/2) to order 12"
SRC_LWH = "w-series of log xi(1/(1-w) + 1/2)"
SRC_LWM = "w-series of log xi(1/(1-w) - 1/2)"
SRC_LWP = "w-series of log xi_+(1/(1-w))"
SRC_LWN = "w-series of log xi_-(1/(1-w))"
SRC_TABLE = "key-point table of xi(s + 1/2) and xi(s - 1/2)"
SRC_RIEMANN = "quoted relative errors of the four-term Dirichlet approximation"
SRC_BOUND = "printed bound sum |rho|^-2 on |tau_k|"

XI_COEFFS = (
    "0.497120778188314109912774", "0.0114859721575727187676249", "0.000123452018070318006890346",
    "8.32355481385527072004759e-7", "3.99222655134413717472527e-9", "1.46160257601109608624121e-11",
)

D_COEFFS = (
    "0.508731038726323958025671", "-0.0234707786048020825988372",
    "0.0122392820411106099993383", "-0.000510680509960582081197381",
    "0.000136219896777660495235434", "-5.22141487535619756401486e-6",
    "9.47246998269225412163851e-7", "-3.37259460993816995307624e-8",
    "4.67141900041698784170513e-9", "-1.55773064531108593374648e-10",
    "1.75421192426233609057205e-11",
)

EP_COEFFS = (
    "0.502925908457319033969223", "-0.0117353893024010412994186",
    "0.0118626270993416643834816", "-0.000255340254980291040598691",
    "0.000129835957423989251062890", "-2.61070743767809878200743e-6",
    "8.89801239827376242084305e-7", "-1.68629730496908497653812e-8",
    "4.33182277588056250821520e-9", "-7.78865322655542966873238e-11",
    "1.60790725013671608840663e-11",
)

EM_COEFFS = (
    "-0.005805130269004924056449", "0.0117353893024010412994186",
    "-0.0003766549417689456158567", "0.000255340254980291040598691",
    "-6.383939353671244172544e-6", "2.61070743767809878200743e-6",
    "-5.7445758441849170079546e-8", "1.68629730496908497653812e-8",
    "-3.3959622453642533348993e-10", "7.78865322655542966873238e-11",
    "-1.4630467412562000216542e-12",
)

F_COEFFS = (
    "0.500000000000000000000000", "-0.0115478544830605169071551",
    "0.0116719322671130915674412", "-0.000248991924961474336175586",
    "0.000126590865158263502528061", "-2.52512739610958708479262e-6",
    "8.60493520930767788890077e-7", "-1.61892073094053848017403e-8",
    "4.15798412501386081535438e-9", "-7.42620960745947002261292e-11",
    "1.53278011638166567551397e-11",
)

SIGMAS = (
    "0.0230957089661210338143102", "-0.0461543172958046027571080",
    "-0.00011115823145210592276267", "0.00007362722126168951832677",
    "7.15093355762607735801e-7", "-2.81436416938766261607e-7",
    "-4.5741911497047721112e-9", "1.26886811095076071901e-9",
    "2.8274371550558870893e-11", "-5.997714847151874595e-12",
)

WH_COEFFS = (
    "0.508731038726323958025671", "0.0234707786048020825988372", "0.0357100606459126925981755",
    "0.0484600231969838846787112", "0.0618568861547933193356797", "0.0760420908309940132618804",
    "0.0911632471991126085730891", "0.107375114867493741415169", "0.124840622449609510369871",
    "0.143731930158926109607415", "0.164231540628834875507686", "0.186533463149563699312568",
    "0.210844436724090899321712",
)

# the w^1 term is absent from the printed series, i.e. zero
WM_COEFFS = (
    "0.497120778188314109912774", "0", "0.011485972157572718767622",
    "0.022971944315145437535244", "0.034581368490788474309757", "0.046437696702572147098050",
    "0.058665213324048159434086", "0.071389867439730985905972", "0.084740109192805809027167",
    "0.098847734117289558795967", "0.113848739461487632047511", "0.12988419653882092022278",
    "0.14710114318598859685984",
)

LOG_WH = (
    "-0.675835813236695767842275", "0.0461359280604625753594660", "0.0691301196352103328072490",
    "0.0920509179650365681271473", "0.114880446150576506783275", "0.137601106517779960377133",
    "0.160195624167229059202861", "0.182647089272462999988600", "0.204938997989198298868628",
    "0.227055291843200263329215", "0.248980395470907623248291", "0.270699252593709637403009",
    "0.292197360113993960590683",
)

LOG_WM = (
    "-0.698922267945331415298362", "0", "0.0231049931154189707889338",
    "0.0462099862308379415778676", "0.0692963930466142775237190", "0.0923456272631053437834055",
    "0.115339150638645639171605", "0.138258521047523929818514", "0.161085440372202462764362",
    "0.183801802064020339427427", "0.206389738207265861712433", "0.228831665922788129186448",
    "0.251110332949243718084027",
)

LOG_WP = (
    "-0.687312419021627833700725", "0.023334230957395524232106", "0.046649213860405348103991",
    "0.069925751526272229957378", "0.093144748336397953034365", "0.116287260571386560139602",
    "0.139334546211624749855289", "0.162268114028537401476190", "0.18506977179446033912675",
    "0.20772167344255548785287", "0.23020636501234089942540", "0.25250682922120233406310",
    "0.27460652850767407018678",
)

LOG_WN = (
    "-5.1490132232563522103123", "2.021554858994170669692", "0.04309595122735336775",
    "0.73127620503659101949", "0.0860819388755765953", "0.5074995561747003636",
    "0.1288489066305341210", "0.435830932894465061", "0.171289602583570808",
    "0.414577014426957098", "0.21329945625114847", "0.41592926321690695",
    "0.25477742573189697",
)

# (w, s, xi(s + 1/2), xi(s - 1/2))
TABLE1 = (
    ("-1", "1/2", "0.5", "0.5"),
    ("-1/3", "3/4", "0.503621", "0.497839"),
    ("0", "1", "0.508371", "0.497121"),
    ("1/2", "2", "0.545094", "0.508731"),
    ("0.9", "10", "4.31356", "2.9175"),
    ("0.95", "20", "1024.78", "531.726"),
)
TABLE1_TYPO = ("0", "xi_h", "0.508731")

RIEMANN_ERRORS = (("0.8", "0.025"), ("0.85", "0.005"), ("0.9", "0.0002"))

PRINTED_BOUND = "0.046191479322"
GAMMA1 = "-0.0728158"


@dataclass(frozen=True)
class GoldenItem:
    id: str
    source: str
    expected: str
    tolerance: str
    flagged: bool = False
    mode: str = "abs"          # abs, rel or factor
    note: str = ""

    def __post_init__(self):
        from decimal import Decimal
        d = Decimal(self.expected)
        if not d.is_finite():
            raise ValueError(f"{self.id}: expected value {self.expected!r} is not finite")
        if self.mode not in ("abs", "rel", "factor"):
            raise ValueError(f"{self.id}: unknown mode {self.mode!r}")


def _listed(prefix, source, values, tol, start=0):
    return [GoldenItem(f"{prefix}{n + start}", source, v, tol) for n, v in enumerate(values)]


def _build() -> dict:
    s = {}
    s["pustylnikov_coeffs"] = _listed("xi_r/", SRC_XI_COEFFS, XI_COEFFS, "1e-20")
    s["series_s"] = (_listed("F/", SRC_F, F_COEFFS, "1e-20") + _listed("D/", SRC_D, D_COEFFS, "1e-20")
                     + _listed("E+/", SRC_EP, EP_COEFFS, "1e-20") + _listed("E-/", SRC_EM, EM_COEFFS, "1e-20"))
    s["series_w"] = (_listed("xi_h_of_w/", SRC_WH, WH_COEFFS, "1e-18")
                     + _listed("xi_m_of_w/", SRC_WM, WM_COEFFS, "1e-18"))
    s["log_series_w"] = (_listed("log_xi_h_of_w/", SRC_LWH, LOG_WH, "1e-18")
                         + _listed("log_xi_m_of_w/", SRC_LWM, LOG_WM, "1e-18")
                         + _listed("log_xi_plus_of_w/", SRC_LWP, LOG_WP, "1e-18")
                         + _listed("log_xi_minus_of_w/", SRC_LWN, LOG_WN, "1e-15"))
    s["keiper_sigma"] = _listed("sigma/", SRC_SIGMA, SIGMAS, "1e-20", start=1)
    t1 = []
    for w, _, h, m in TABLE1:
        for col, v in (("xi_h", h), ("xi_m", m)):
            flagged = (w, col) == TABLE1_TYPO[:2]
            note = (f"printed digits transposed; the value is {TABLE1_TYPO[2]}, the D_0 entry"
                    if flagged else "")
            t1.append(GoldenItem(f"table1/w={w}/{col}", SRC_TABLE, v, "5e-5", flagged, "rel", note))
    s["table1"] = t1
    s["closed_forms"] = [
        GoldenItem("closed/C0", "closed form of xi_0 vs " + SRC_XI_COEFFS, XI_COEFFS[0], "1e-20"),
        GoldenItem("closed/C1", "closed form of the odd coefficient of xi(s + 1/2), which vanishes", "0", "1e-20"),
        GoldenItem("closed/C2", "closed form of xi_1 vs " + SRC_XI_COEFFS, XI_COEFFS[1], "1e-20"),
        GoldenItem("closed/D0", "closed form vs " + SRC_D, D_COEFFS[0], "1e-20"),
        GoldenItem("closed/D1", "closed form vs " + SRC_D, D_COEFFS[1], "1e-20"),
        GoldenItem("closed/F0", "closed form vs " + SRC_F, F_COEFFS[0], "1e-20"),
        GoldenItem("closed/F1", "closed form vs " + SRC_F, F_COEFFS[1], "1e-20"),
        GoldenItem("closed/F2", "closed form vs " + SRC_F, F_COEFFS[2], "1e-20"),
        GoldenItem("closed/gamma1", "first Stieltjes constant as quoted to 6 figures", GAMMA1, "5e-8"),
        GoldenItem("closed/zeta_prime_half", "zeta'(1/2) = zeta(1/2)[log pi - psi(1/4)]/2, residual", "0", "1e-25"),
        GoldenItem("direct/xi(1/2)", "xi(1/2) evaluated directly vs " + SRC_XI_COEFFS, XI_COEFFS[0], "1e-20"),
        GoldenItem("direct/xi(3/2)", "xi(3/2) evaluated directly vs " + SRC_D, D_COEFFS[0], "1e-20"),
        GoldenItem("keiper/tau_bound", SRC_BOUND, PRINTED_BOUND, "1e-12", True, "abs",
                   "2 sigma_1 = 0.04619141793224...; the printed constant drops the digit 1 after 0.0461914"),
    ]
    s["riemann_errors"] = [GoldenItem(f"dirichlet_rel_err/w={w}", SRC_RIEMANN, v, "2", False, "factor")
                           for w, v in RIEMANN_ERRORS]
    return s


SUITES = _build()
SUITE_NAMES = tuple(SUITES) + ("all",)


def dataset_digest() -> str:
    h = hashlib.sha256()
    for name in sorted(SUITES):
        for it in SUITES[name]:
            h.update(f"{name}|{it.id}|{it.expected}|{it.tolerance}|{it.mode}|{int(it.flagged)}\n".encode())
    return h.hexdigest()


DATASET_SHA256 = "80034a2cab89f311ac07853a1a5bc98e3b23a2773576a5c878abaf68596dd35b"
