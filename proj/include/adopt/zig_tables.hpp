#pragma once

// Ziggurat tables for the standard normal sampler in rng.hpp.
// Generated offline in 40-digit arithmetic; each of the 128 regions has
// area V and the height recursion closes at 1 to ~4e-40.

namespace adopt::detail {

// 128-layer ziggurat tables for the standard normal distribution.
// R = 3.4426198558966521, per-region area V = 0.0099125630353364611.
inline constexpr double kZigR = 3.4426198558966521;
inline constexpr double kZigEdge[129] = {
    3.7130862467403633,
    3.4426198558966521,
    3.2230849845786185,
    3.0832288582142137,
    2.9786962526450170,
    2.8943440070186706,
    2.8231253505459664,
    2.7611693723841539,
    2.7061135731187223,
    2.6564064112581925,
    2.6109722484286132,
    2.5690336259216391,
    2.5300096723854666,
    2.4934545220919508,
    2.4590181774083501,
    2.4264206455302116,
    2.3954342780074673,
    2.3658713701139875,
    2.3375752413355307,
    2.3104136836950022,
    2.2842740596736568,
    2.2590595738653295,
    2.2346863955870570,
    2.2110814088747278,
    2.1881804320720206,
    2.1659267937448407,
    2.1442701823562614,
    2.1231657086697900,
    2.1025731351849989,
    2.0824562379877246,
    2.0627822745039634,
    2.0435215366506695,
    2.0246469733729339,
    2.0061338699589668,
    1.9879595741230607,
    1.9701032608497132,
    1.9525457295488889,
    1.9352692282919002,
    1.9182573008597320,
    1.9014946531003176,
    1.8849670357028692,
    1.8686611409895420,
    1.8525645117230871,
    1.8366654602533840,
    1.8209529965910051,
    1.8054167642140487,
    1.7900469825946190,
    1.7748343955807692,
    1.7597702248942319,
    1.7448461281083765,
    1.7300541605582435,
    1.7153867407081165,
    1.7008366185643009,
    1.6863968467734863,
    1.6720607540918522,
    1.6578219209482075,
    1.6436741568569826,
    1.6296114794646784,
    1.6156280950371330,
    1.6017183802152771,
    1.5878768648844007,
    1.5740982160167497,
    1.5603772223598407,
    1.5467087798535035,
    1.5330878776675561,
    1.5195095847593708,
    1.5059690368565503,
    1.4924614237746154,
    1.4789819769830979,
    1.4655259573357946,
    1.4520886428822165,
    1.4386653166774613,
    1.4252512545068616,
    1.4118417124397603,
    1.3984319141236064,
    1.3850170377251486,
    1.3715922024197323,
    1.3581524543224229,
    1.3446927517457130,
    1.3312079496576765,
    1.3176927832013430,
    1.3041418501204215,
    1.2905495919178732,
    1.2769102735516997,
    1.2632179614460282,
    1.2494664995643337,
    1.2356494832544812,
    1.2217602305309626,
    1.2077917504067576,
    1.1937367078237722,
    1.1795873846544607,
    1.1653356361550469,
    1.1509728421389761,
    1.1364898520030755,
    1.1218769225722541,
    1.1071236475235354,
    1.0922188768965538,
    1.0771506248819377,
    1.0619059636836194,
    1.0464709007525803,
    1.0308302360564556,
    1.0149673952392995,
    0.99886423348064351,
    0.98250080350276038,
    0.96585507938813059,
    0.94890262549791195,
    0.93161619660135381,
    0.91396525100880178,
    0.89591535256623853,
    0.87742742909771569,
    0.85845684317805086,
    0.83895221428120746,
    0.81885390668331772,
    0.79809206062627480,
    0.77658398787614839,
    0.75423066443451007,
    0.73091191062188128,
    0.70647961131360803,
    0.68074791864590422,
    0.65347863871504239,
    0.62435859730908822,
    0.59296294244197798,
    0.55869217837551797,
    0.52065603872514492,
    0.47743783725378788,
    0.42654798630330512,
    0.36287143102841830,
    0.27232086470466385,
    0.0,
};
inline constexpr double kZigHeight[129] = {
    0.0,
    0.0026696290839025035,
    0.0055489952208164705,
    0.0086244844129304710,
    0.011839478657982314,
    0.015167298010672042,
    0.018592102737165813,
    0.022103304616111593,
    0.025693291936149617,
    0.029356317440253830,
    0.033087886146505156,
    0.036884388786968774,
    0.040742868074790605,
    0.044660862200872430,
    0.048636295860284052,
    0.052667401903503170,
    0.056752663481538584,
    0.060890770348566376,
    0.065080585213631874,
    0.069321117394180253,
    0.073611501884754893,
    0.077950982514654714,
    0.082338898242957408,
    0.086774671895542969,
    0.091257800827634710,
    0.095787849122578152,
    0.10036444102954554,
    0.10498725541035454,
    0.10965602101581776,
    0.11437051244988827,
    0.11913054670871859,
    0.12393598020398174,
    0.12878670619710396,
    0.13368265258464764,
    0.13862377998585104,
    0.14361008009193299,
    0.14864157424369697,
    0.15371831220958657,
    0.15884037114093508,
    0.16400785468492775,
    0.16922089223892475,
    0.17447963833240232,
    0.17978427212496211,
    0.18513499701071343,
    0.19053204032091372,
    0.19597565311811041,
    0.20146611007620324,
    0.20700370944187380,
    0.21258877307373610,
    0.21822164655637060,
    0.22390269938713389,
    0.22963232523430270,
    0.23541094226572766,
    0.24123899354775132,
    0.24711694751469674,
    0.25304529850976586,
    0.25902456739871074,
    0.26505530225816194,
    0.27113807914102527,
    0.27727350292189771,
    0.28346220822601252,
    0.28970486044581050,
    0.29600215684985584,
    0.30235482778947976,
    0.30876363800925192,
    0.31522938806815752,
    0.32175291587920862,
    0.32833509837615240,
    0.33497685331697116,
    0.34167914123501368,
    0.34844296754987247,
    0.35526938485154714,
    0.36215949537303321,
    0.36911445366827514,
    0.37613546951445443,
    0.38322381105988365,
    0.39038080824138949,
    0.39760785649804255,
    0.40490642081148835,
    0.41227804010702462,
    0.41972433205403823,
    0.42724699830956240,
    0.43484783025466190,
    0.44252871528024661,
    0.45029164368692696,
    0.45813871627287196,
    0.46607215269457098,
    0.47409430069824960,
    0.48220764633483869,
    0.49041482528932164,
    0.49871863547658432,
    0.50712205108130459,
    0.51562823824987205,
    0.52424057267899280,
    0.53296265938998759,
    0.54179835503172412,
    0.55075179312105528,
    0.55982741271069482,
    0.56902999107472161,
    0.57836468112670231,
    0.58783705444182053,
    0.59745315095181228,
    0.60721953663260489,
    0.61714337082656249,
    0.62723248525781457,
    0.63749547734314487,
    0.64794182111855081,
    0.65858200005865368,
    0.66942766735770617,
    0.68049184100641433,
    0.69178914344603585,
    0.70333609902581742,
    0.71515150742047704,
    0.72725691835450588,
    0.73967724368333815,
    0.75244155918570380,
    0.76558417390923599,
    0.77914608594170317,
    0.79317701178385921,
    0.80773829469612111,
    0.82290721139526200,
    0.83878360531064722,
    0.85550060788506428,
    0.87324304892685359,
    0.89228165080230272,
    0.91304364799203806,
    0.93628268170837108,
    0.96359969315576760,
    1.0000000000000000,
};

}  // namespace adopt::detail
