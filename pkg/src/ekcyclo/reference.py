"""Golden reference values for the verification harness.

kappa(q) for every odd prime q < 1000, truncated to 30 digits.
The verification command recomputes each value and reports the
maximum deviation.
"""
from __future__ import annotations

KAPPA_REFERENCE: tuple[tuple[int, str], ...] = (
    (3, "-0.335224373301549299654816272011"),
    (5, "-0.196173501603961235980346083986"),
    (7, "-0.067031676838182540620959092690"),
    (11, "0.102860286443295216553377535220"),
    (13, "0.112609625562397183644619140260"),
    (17, "-0.123599726784128717636050456728"),
    (19, "-0.483413418826496988129263309946"),
    (23, "0.304501778642862588117192982929"),
    (29, "0.202174400853472811939673145368"),
    (31, "-0.167096940024034810849977929755"),
    (37, "-0.116722996141948523834462113315"),
    (41, "-0.019078448817730487665286522915"),
    (43, "-0.001063229955915806485603063750"),
    (47, "-0.004178628154399978902142786696"),
    (53, "-0.068102981731655092877815133182"),
    (59, "0.077561177537401718955224637346"),
    (61, "-0.085600677063319552995034524968"),
    (67, "0.048195303630233224012827541336"),
    (71, "-0.054112902001196238161718707411"),
    (73, "0.349480310713616884139356667045"),
    (79, "-0.156621195958631413503001970935"),
    (83, "0.232654418724714289189129416232"),
    (89, "0.286113111172147083063576959599"),
    (97, "-0.097406509380448235796556853350"),
    (101, "0.137944974577464046144537684905"),
    (103, "0.083885279170642135997577692479"),
    (107, "-0.021577355804406921497164663554"),
    (109, "-0.132210409721544731056437843608"),
    (113, "0.146243585139370860703027524805"),
    (127, "0.040394010134348489183018827920"),
    (131, "0.298449023408991783321689774462"),
    (137, "0.047930965876723141064902285324"),
    (139, "-0.148432025631579335054711906883"),
    (149, "0.074744597741851346493266689740"),
    (151, "0.124630596839923975050779380013"),
    (157, "-0.342221786939673495594702901369"),
    (163, "-0.075930049357489864149813121665"),
    (167, "-0.240143659440212808338520030893"),
    (173, "0.263674051277298658168490819274"),
    (179, "0.333190239006673566447646671954"),
    (181, "0.073654489425694545929682768408"),
    (191, "0.290035630415210093718516692609"),
    (193, "0.222651642202729866484149916054"),
    (197, "-0.156566809829687617064016329304"),
    (199, "-0.282430739458251133741875904647"),
    (211, "-0.429168347924233047597587411558"),
    (223, "-0.155603071391591932610289432189"),
    (227, "-0.353136988360127612810701881267"),
    (229, "-0.362422753876730085842820149560"),
    (233, "0.433532695766378853227670116542"),
    (239, "0.164184459843550091782890956397"),
    (241, "0.159253022504160842909844706024"),
    (251, "0.146972144654037063050493044384"),
    (257, "-0.136199726917943335811627159604"),
    (263, "-0.074624164045906778442642890380"),
    (269, "0.013472786285611176254289149447"),
    (271, "-0.189411243976062586851108632756"),
    (277, "0.263202439115100139126518544356"),
    (281, "0.057724833014438081725834568053"),
    (283, "-0.017818517564561211690503522917"),
    (293, "0.306747668430650885617781010764"),
    (307, "-0.069456295139958127570388779996"),
    (311, "0.198785581009518830204116721399"),
    (313, "-0.058335428782145955572971075926"),
    (317, "-0.306162250315812940131841982805"),
    (331, "-0.221876535391440609759086790484"),
    (337, "-0.137585019298129547983000969948"),
    (347, "0.125972980141740521593554243788"),
    (349, "-0.021683748794506169104750643621"),
    (353, "-0.184452367141133812078478630767"),
    (359, "0.147038825471371984998505014858"),
    (367, "-0.069313097303205530130205666424"),
    (373, "0.076596129588533742221629674966"),
    (379, "-0.388797187453176730278714669405"),
    (383, "-0.230682223036936316348691095841"),
    (389, "-0.223032768871024628694255146810"),
    (397, "0.000748118855371051701377580116"),
    (401, "0.185572827154491322428329890735"),
    (409, "0.248052237047556669352046991132"),
    (419, "0.157332613388133412852639687710"),
    (421, "-0.174178764178552548930059030768"),
    (431, "0.128634340886396804242241451176"),
    (433, "0.084269733696337528785456854927"),
    (439, "-0.447877263969389723214762662837"),
    (443, "0.427464638596097761454083371858"),
    (449, "-0.139890854597819111185944638526"),
    (457, "-0.245371236271918975132113711427"),
    (461, "0.038620450496409517715179339278"),
    (463, "-0.036333074275340449015217357910"),
    (467, "-0.121566043211421853161767135819"),
    (479, "0.145182917495206913077999600130"),
    (487, "0.140413509949441485073692928488"),
    (491, "0.262904594663507382291183569451"),
    (499, "-0.219260694237723093748867207657"),
    (503, "0.155264822023478652427167746436"),
    (509, "0.396770359727893150134302886340"),
    (521, "-0.407742993248390943508928391886"),
    (523, "0.011011396537186197983927501061"),
    (541, "-0.056550025070562764651312824901"),
    (547, "-0.362750306999037956812425242973"),
    (557, "-0.002498502607772693313640828116"),
    (563, "-0.082061002005529751422431640627"),
    (569, "-0.189592641309933980463255439634"),
    (571, "0.006762564496705295384412330712"),
    (577, "-0.071366532593572706997338782409"),
    (587, "-0.275331295594215260975351328532"),
    (593, "0.047479327097910440102634939653"),
    (599, "-0.042594548496272768170014013524"),
    (601, "-0.027460621240038493801636892036"),
    (607, "-0.183552581670057320622328056234"),
    (613, "-0.174524935685109163930471540817"),
    (617, "-0.208966374151513622926768311323"),
    (619, "-0.259629282624073772565452173821"),
    (631, "0.190116056570891865159528180383"),
    (641, "0.325939155356921431799220348265"),
    (643, "0.019886733189759427898093298165"),
    (647, "-0.137685395879823224137370997201"),
    (653, "0.273543758131422511493206807416"),
    (659, "0.383633957411155840228259251017"),
    (661, "-0.200105122199871976054565725904"),
    (673, "0.019385166425234903510111836048"),
    (677, "-0.094849834462250448508720537392"),
    (683, "0.119530228514915593721765831729"),
    (691, "-0.290881331274701683551158981060"),
    (701, "-0.087188812276913764965555516461"),
    (709, "0.064919413083159646396701312314"),
    (719, "0.181990826991575152578239392835"),
    (727, "0.046655812079948584302413751120"),
    (733, "-0.016642504300237507705799731068"),
    (739, "0.115713008144331724148361011007"),
    (743, "0.007343718971347873496945247142"),
    (751, "0.030925590148469386161588553586"),
    (757, "-0.052022312742514114454595810552"),
    (761, "0.444249104121725236751924267608"),
    (769, "-0.159282715034694377684631604887"),
    (773, "0.096632555915274919995984608182"),
    (787, "-0.042575685211717990064154229651"),
    (797, "0.058819660486877031151706605185"),
    (809, "0.315145023051549625660887462917"),
    (811, "-0.235354497663854842492900197703"),
    (821, "0.096861803511194817694770007831"),
    (823, "-0.034388994619879620513739570904"),
    (827, "-0.173652349209065218039268176978"),
    (829, "-0.195235656323517329297617035637"),
    (839, "-0.115638368729781225060211708094"),
    (853, "0.065511643256111743290917202609"),
    (857, "0.061215218394828596351971508897"),
    (859, "-0.159681951250709570182943546895"),
    (863, "0.070158552601870909036548126563"),
    (877, "-0.363272663845270843179334892982"),
    (881, "0.151983175755910192350668847190"),
    (883, "0.158424230922396137325711547541"),
    (887, "-0.034198720345486031699283336100"),
    (907, "-0.145266048805493201042546684519"),
    (911, "0.058290635536702959098297788733"),
    (919, "0.046137246025493658435384125040"),
    (929, "0.063037917470448604187531863614"),
    (937, "-0.072912862331977817247297121763"),
    (941, "0.113504707610325586382805828841"),
    (947, "0.268372969161553904131938250228"),
    (953, "0.136016292884486881751392072599"),
    (967, "-0.359730379227549872320819915874"),
    (971, "0.094543904158954407172899643305"),
    (977, "-0.211593426266351284571256570972"),
    (983, "-0.300766180700610757960740884883"),
    (991, "-0.126006012080074567946120981737"),
    (997, "-0.152411646339118425456419731685"),
)


def kappa_reference() -> dict[int, float]:
    """Reference table parsed to binary64."""
    return {q: float(v) for q, v in KAPPA_REFERENCE}
